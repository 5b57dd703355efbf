#include "vimod/parallel.hpp"

#include <atomic>

namespace vimod {

namespace {
std::atomic<int> g_workers{4};
}

void set_worker_threads(int n) { g_workers.store(n < 1 ? 1 : n); }

int worker_threads() { return g_workers.load(); }

}  // namespace vimod
