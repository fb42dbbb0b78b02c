#pragma once

// Sweep parallelism. The thread count is capped by PT_SPECTRA_THREADS
// (positive integer) when set; each task writes only its own output slot,
// so results do not depend on scheduling.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "pt/core.hpp"

namespace pt {

inline constexpr const char* threads_env_var = "PT_SPECTRA_THREADS";

/// Parses a PT_SPECTRA_THREADS value; throws ValidationError unless it is a positive integer.
inline std::size_t parse_thread_cap(const std::string& text)
{
    std::size_t pos = 0;
    unsigned long long value = 0;
    try {
        value = std::stoull(text, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (text.empty() || pos != text.size() || value == 0 || text.front() == '-' || text.front() == '+') {
        throw ValidationError(std::string(threads_env_var) + " must be a positive integer (got \"" + text + "\")");
    }
    return static_cast<std::size_t>(value);
}

inline std::size_t thread_cap()
{
    const std::size_t hw = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    if (const char* env = std::getenv(threads_env_var)) {
        return parse_thread_cap(env);
    }
    return hw;
}

/// Runs fn(i) for i in [0, count). The first exception thrown by any task is rethrown.
template <class Fn>
void parallel_for(std::size_t count, Fn&& fn, std::size_t max_threads = thread_cap())
{
    const std::size_t workers = std::min(count, std::max<std::size_t>(1, max_threads));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            fn(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < count; i = next++) {
                    try {
                        fn(i);
                    } catch (...) {
                        std::lock_guard lock(error_mutex);
                        if (!error) {
                            error = std::current_exception();
                        }
                    }
                }
            });
        }
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

}  // namespace pt
