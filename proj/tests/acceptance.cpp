// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances and grid sizes are fixed here, not configurable.
#include <chrono>
#include <cstdio>
#include <string>

#include "susyline/checks.hpp"

using namespace susyline;
namespace {

int failures = 0;

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void report(int criterion, bool pass, const std::string& detail) {
    if (!pass) ++failures;
    std::printf("CRITERION %d %s %s\n", criterion, pass ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
}

std::string describe(const checks::Report& rep) {
    int total = static_cast<int>(rep.size()), bad = 0;
    std::string first_bad;
    for (const auto& r : rep)
        if (!r.pass) {
            if (first_bad.empty()) first_bad = r.name + (r.detail.empty() ? "" : ": " + r.detail);
            ++bad;
        }
    if (bad == 0) return std::to_string(total) + " checks";
    return std::to_string(bad) + "/" + std::to_string(total) + " failed, first: " + first_bad;
}

} // namespace

int main() {
    const HalfInt j92 = HalfInt::halves(9);
    const HalfInt j72 = HalfInt::halves(7);
    const HalfInt j52 = HalfInt::halves(5);

    // 1. exact multiplet suite, zero tolerance, j up to 9/2, within 10 s
    {
        auto t0 = std::chrono::steady_clock::now();
        checks::Report rep = checks::multiplet_suite(j92);
        double dt = seconds_since(t0);
        bool pass = checks::all_pass(rep) && dt <= 10.0;
        report(1, pass, describe(rep) + ", " + std::to_string(dt) + " s");
    }

    // 2. algebra suite: commutators and products exact on every constructed
    //    state, factorizations on 20 random ring elements for |jz| <= 5/2
    {
        checks::Report rep = checks::algebra_suite(j92, j52, 20, 987654321u);
        report(2, checks::all_pass(rep), describe(rep));
    }

    // 3. ladder coefficients within 1e-10 for all j <= 7/2
    {
        checks::Report rep = checks::ladder_suite(j72, 1e-10);
        report(3, checks::all_pass(rep), describe(rep));
    }

    // 4. spectrum table: epsilon exact, E~ to 1e-15 relative, G in {0.5, 1, 2}
    {
        checks::Report rep = checks::spectrum_suite(j92, {0.5, 1.0, 2.0}, 1e-15);
        report(4, checks::all_pass(rep), describe(rep));
    }

    // 5. broken SUSY: non-normalizable candidates for |jz| <= 9/2; discrete
    //    partner spectra pairwise within 1e-10 at n = 1024 for jz in {1/2, 3/2}
    {
        checks::Report rep = checks::broken_susy_suite(
            j92, {HalfInt::halves(1), HalfInt::halves(3)}, 1024, 1e-10);
        report(5, checks::all_pass(rep), describe(rep));
    }

    // 6. FD cross-check with Richardson extrapolation over n = 512..4096,
    //    within 1e-2 of {1, 4, 9} (jz = 1/2) and 4 (jz = 3/2), within 60 s
    {
        auto t0 = std::chrono::steady_clock::now();
        checks::Report rep = checks::fd_convergence_suite({512, 1024, 2048, 4096}, 1e-2);
        double dt = seconds_since(t0);
        bool pass = checks::all_pass(rep) && dt <= 60.0;
        report(6, pass, describe(rep) + ", " + std::to_string(dt) + " s");
    }

    // 7. transforms: residuals <= 1e-10 for all states with j <= 5/2, Hankel
    //    roundtrips <= 1e-6 for orders 0..2, closed-form pair to 1e-6
    {
        checks::Report rep = checks::transform_suite(j52, 1.0, 1e-10, 1e-6);
        report(7, checks::all_pass(rep), describe(rep));
    }

    if (failures == 0) std::printf("ACCEPTANCE PASS\n");
    else std::printf("ACCEPTANCE FAIL (%d criteria)\n", failures);
    return failures == 0 ? 0 : 1;
}
