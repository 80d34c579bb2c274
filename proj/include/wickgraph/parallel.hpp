#pragma once

#include <cstdlib>
#include <thread>

namespace wickgraph {

// Worker-count policy shared by the enumerating passes: an explicit request
// wins, then the WICKGRAPH_WORKERS environment variable, then the hardware
// concurrency, with a floor of one.
inline int resolve_worker_count(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("WICKGRAPH_WORKERS")) {
        const int k = std::atoi(env);
        if (k > 0) return k;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? (int)hw : 1;
}

}  // namespace wickgraph
