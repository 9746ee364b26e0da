#include "susyline/exactlin.hpp"

#include <utility>

namespace susyline {

namespace {

// forward elimination; returns pivot column per eliminated row
std::vector<int> eliminate(RationalMatrix& m, int cols) {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < cols && row < static_cast<int>(m.size()); ++col) {
        int p = -1;
        for (int r = row; r < static_cast<int>(m.size()); ++r)
            if (!m[r][col].is_zero()) { p = r; break; }
        if (p < 0) continue;
        std::swap(m[row], m[p]);
        Rational inv = Rational(1) / m[row][col];
        for (int c = col; c < cols; ++c) m[row][c] *= inv;
        for (int r = 0; r < static_cast<int>(m.size()); ++r) {
            if (r == row || m[r][col].is_zero()) continue;
            Rational f = m[r][col];
            for (int c = col; c < cols; ++c) m[r][c] -= f * m[row][c];
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

} // namespace

int rational_rank(RationalMatrix m) {
    if (m.empty()) return 0;
    return static_cast<int>(eliminate(m, static_cast<int>(m[0].size())).size());
}

std::vector<std::vector<Rational>> rational_kernel(RationalMatrix m, int cols) {
    std::vector<int> pivots = m.empty() ? std::vector<int>{} : eliminate(m, cols);
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivots) is_pivot[c] = true;

    std::vector<std::vector<Rational>> basis;
    for (int free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rational> v(cols);
        v[free] = Rational(1);
        for (size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = -m[r][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace susyline
