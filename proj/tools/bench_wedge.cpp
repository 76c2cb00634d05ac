// Times the wedge kernel: serial reference vs the OpenMP path, on the
// power towers that dominate the certification runs.

#include "skewform/altform.hpp"

#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace skewform;
using Clock = std::chrono::steady_clock;

namespace {

double best_of(const AltForm& g, const AltForm& h, bool parallel, int reps) {
    double best = 1e30;
    for (int i = 0; i < reps; ++i) {
        auto t0 = Clock::now();
        AltForm out = parallel ? wedge(g, h) : wedge_serial(g, h);
        best = std::min(best, std::chrono::duration<double>(Clock::now() - t0).count());
    }
    return best;
}

void bench(const Family& family, std::size_t a, std::size_t b, int reps) {
    SpacePtr space = make_space(family);
    PowerCache powers(space);
    const AltForm& left = powers.power(a);
    const AltForm& right = powers.power(b);

    // The two paths must agree exactly; this also warms the allocator.
    if (wedge_serial(left, right) != wedge(left, right)) {
        std::printf("%s: MISMATCH between serial and parallel wedge\n", space->label.c_str());
        return;
    }
    double ts = best_of(left, right, false, reps);
    double tp = best_of(left, right, true, reps);
    std::printf("%-16s X^%zu ^ X^%zu  %7.4fs serial  %7.4fs parallel  speedup %.2fx\n",
                space->label.c_str(), a, b, ts, tp, ts / tp);
}

}  // namespace

int main(int argc, char** argv) {
    int jobs = argc > 1 ? std::atoi(argv[1]) : 0;
#ifdef _OPENMP
    if (jobs > 0)
        omp_set_num_threads(jobs);
    std::printf("threads: %d\n", jobs > 0 ? jobs : omp_get_max_threads());
#else
    (void)jobs;
    std::printf("built without OpenMP; both paths are serial\n");
#endif
    bench({FamilyKind::sympl_minus, 4}, 7, 1, 5);
    bench({FamilyKind::orth_minus, 5}, 7, 1, 5);
    bench({FamilyKind::sympl_plus, 6}, 8, 1, 3);
    bench({FamilyKind::orth_plus, 5}, 8, 1, 3);
    bench({FamilyKind::orth_plus, 5}, 4, 5, 3);
    bench({FamilyKind::sympl_plus, 6}, 5, 4, 3);
    return 0;
}
