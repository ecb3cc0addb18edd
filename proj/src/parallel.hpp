// parallel.hpp: wave-scheduled block loop with an in-order merge.
#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace corona::detail {

inline unsigned resolve_threads(unsigned requested) {
    if (requested != 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : std::min(hw, 16u);
}

// Runs work(block, state) for blocks [0, blocks) with up to `threads` blocks in
// flight, then merge(block, state) strictly in block order. States are reused
// across waves, so memory is threads * sizeof(State).
template <class State, class Init, class Work, class Merge>
void ordered_blocks(std::size_t blocks, unsigned threads, Init init, Work work, Merge merge) {
    threads = static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(threads, blocks)));
    std::vector<State> states;
    states.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) states.push_back(init());
    for (std::size_t wave = 0; wave < blocks; wave += threads) {
        const std::size_t in_wave = std::min<std::size_t>(threads, blocks - wave);
        if (in_wave == 1) {
            work(wave, states[0]);
        } else {
            std::vector<std::exception_ptr> errors(in_wave);
            std::vector<std::thread> pool;
            pool.reserve(in_wave);
            for (std::size_t t = 0; t < in_wave; ++t)
                pool.emplace_back([&, t] {
                    try {
                        work(wave + t, states[t]);
                    } catch (...) {
                        errors[t] = std::current_exception();
                    }
                });
            for (auto& th : pool) th.join();
            for (auto& e : errors)
                if (e) std::rethrow_exception(e);
        }
        for (std::size_t t = 0; t < in_wave; ++t) merge(wave + t, states[t]);
    }
}

}  // namespace corona::detail
