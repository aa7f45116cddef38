// Compares the serial reference kernels with the OpenMP variants on the
// graphs this toolkit actually produces, and checks they agree.

#include <chrono>
#include <cstdio>

#include "cqembed/embedder.hpp"
#include "cqembed/topology.hpp"
#include "cqembed/verifier.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace cqembed;

namespace {

template <typename F>
double seconds(F&& f) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

} // namespace

int main(int argc, char** argv) {
    int max_m = argc > 1 ? std::atoi(argv[1]) : 12;
#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (built without OpenMP)\n");
#endif

    std::printf("%-26s %10s %10s %8s\n", "kernel", "serial[s]", "parallel[s]", "speedup");
    for (int m = 10; m <= max_m; ++m) {
        Graph g = build_crossed_cube(m);
        std::vector<int> a, b;
        double ts = seconds([&] { a = eccentricities_serial(g); });
        double tp = seconds([&] { b = eccentricities_parallel(g); });
        if (a != b) {
            std::fprintf(stderr, "eccentricities disagree at m=%d\n", m);
            return 1;
        }
        std::printf("%-26s %10.3f %10.3f %7.1fx\n",
                    ("eccentricities CQ_" + std::to_string(m)).c_str(), ts, tp, ts / tp);
    }

    for (int n : {6, 8}) {
        if (dimension_for(n) > max_m) continue;
        Embedding e = embed(n);
        std::vector<int> a, b;
        double ts = seconds([&] { a = shortest_dilation_certificate_serial(e); });
        double tp = seconds([&] { b = shortest_dilation_certificate(e); });
        if (a != b) {
            std::fprintf(stderr, "certificates disagree at n=%d\n", n);
            return 1;
        }
        std::printf("%-26s %10.3f %10.3f %7.1fx\n",
                    ("edge certificate n=" + std::to_string(n)).c_str(), ts, tp, ts / tp);
    }
    return 0;
}
