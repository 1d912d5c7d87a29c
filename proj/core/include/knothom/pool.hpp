#ifndef KNOTHOM_POOL_HPP
#define KNOTHOM_POOL_HPP

#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace knothom {

/// KNOTHOM_THREADS overrides hardware concurrency.
inline int default_thread_count() {
    if (const char* e = std::getenv("KNOTHOM_THREADS")) {
        int v = std::atoi(e);
        if (v >= 1) return v;
    }
    unsigned h = std::thread::hardware_concurrency();
    return h ? (int)h : 1;
}

/// Run f(i) for i in [0, n). Tasks must write only to their own slots.
inline void parallel_for(int n, int threads, const std::function<void(int)>& f) {
    if (threads <= 1 || n <= 1) {
        for (int i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<int> next{0};
    std::atomic<bool> failed{false};
    std::vector<std::thread> ws;
    int nw = std::min(threads, n);
    for (int w = 0; w < nw; ++w)
        ws.emplace_back([&] {
            while (!failed.load()) {
                int i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    f(i);
                } catch (...) {
                    failed.store(true);
                    return;
                }
            }
        });
    for (auto& t : ws) t.join();
    // Replay serially so the exception surfaces deterministically.
    if (failed.load())
        for (int i = 0; i < n; ++i) f(i);
}

}  // namespace knothom

#endif
