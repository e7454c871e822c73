// Benchmark: serial reference vs OpenMP box enumeration on cyclic quotient
// cones. The two kernels must agree point for point; the benchmark reports
// wall times and the speedup.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "nashcert/lattice.hpp"

using namespace nashcert;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    long long m = 97, a = 31, box = 4;
    int reps = 3;
    for (int i = 1; i < argc; ++i) {
        std::string arg = argv[i];
        auto next = [&]() -> long long { return i + 1 < argc ? std::atoll(argv[++i]) : 0; };
        if (arg == "--m")
            m = next();
        else if (arg == "--a")
            a = next();
        else if (arg == "--box")
            box = next();
        else if (arg == "--reps")
            reps = static_cast<int>(next());
        else {
            std::fprintf(stderr, "usage: bench_lattice [--m M] [--a A] [--box K] [--reps N]\n");
            return 2;
        }
    }
    if (m < 2 || a < 1 || a >= m || llgcd(a, m) != 1) {
        std::fprintf(stderr, "need 1 <= a < m with gcd(a,m) = 1\n");
        return 2;
    }

    SimplicialCone cone = SimplicialCone::cyclic_quotient(m, {1, a, m - a});
    std::vector<AxisRange> ranges(3, AxisRange{Rat(0), Rat(box)});

#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (built without OpenMP)\n");
#endif
    std::printf("cone 1/%lld(1,%lld,%lld), box [0,%lld]^3\n", m, a, m - a, box);

    double best_serial = 1e100, best_parallel = 1e100;
    size_t count = 0;
    for (int r = 0; r < reps; ++r) {
        auto t0 = Clock::now();
        auto serial = enumerate_box_serial(cone, ranges);
        double ts = seconds_since(t0);

        t0 = Clock::now();
        auto parallel = enumerate_box_parallel(cone, ranges);
        double tp = seconds_since(t0);

        if (serial.size() != parallel.size()) {
            std::fprintf(stderr, "MISMATCH: serial %zu points, parallel %zu\n", serial.size(),
                         parallel.size());
            return 1;
        }
        for (size_t i = 0; i < serial.size(); ++i)
            if (!same_coords(serial[i].coords, parallel[i].coords)) {
                std::fprintf(stderr, "MISMATCH at index %zu\n", i);
                return 1;
            }
        count = serial.size();
        best_serial = std::min(best_serial, ts);
        best_parallel = std::min(best_parallel, tp);
        std::printf("rep %d: serial %.3fs  parallel %.3fs  (%zu lattice points)\n", r, ts, tp,
                    serial.size());
    }
    std::printf("best: serial %.3fs, parallel %.3fs, speedup %.2fx, %zu points, outputs equal\n",
                best_serial, best_parallel, best_serial / best_parallel, count);
    return 0;
}
