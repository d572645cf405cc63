// reduce.hpp -- deterministic pairwise (tree) summation.
//
// All floating-point sums in the library go through this reduction so that
// results are bit-identical across runs and thread counts.  The shape is
// fixed: terms are grouped into leaves of LEAF_SIZE consecutive terms, each
// leaf is summed left to right, and leaf sums are combined by splitting the
// leaf range at floor(len/2) recursively.  Threads may compute different
// leaves, never change the shape.
#pragma once

#include "twistlab/common.hpp"

#include <thread>
#include <vector>

namespace twistlab {

inline constexpr std::size_t LEAF_SIZE = 4096;

namespace detail {

template <typename T>
T combine_tree(const std::vector<T>& leaves, std::size_t lo, std::size_t n) {
    if (n == 1) return leaves[lo];
    std::size_t h = n / 2;
    return combine_tree(leaves, lo, h) + combine_tree(leaves, lo + h, n - h);
}

} // namespace detail

// Sums f(i) for i in [0, n).  f must be a pure function of i.
template <typename T, typename F>
T pairwise_sum(std::size_t n, F&& f) {
    if (n == 0) return T{};
    std::size_t nleaves = (n + LEAF_SIZE - 1) / LEAF_SIZE;
    std::vector<T> leaves(nleaves);

    auto do_leaf = [&](std::size_t k) {
        std::size_t lo = k * LEAF_SIZE;
        std::size_t hi = std::min(n, lo + LEAF_SIZE);
        T acc{};
        for (std::size_t i = lo; i < hi; ++i) acc += f(i);
        leaves[k] = acc;
    };

    unsigned nt = thread_count();
    if (nt <= 1 || nleaves < 2) {
        for (std::size_t k = 0; k < nleaves; ++k) do_leaf(k);
    } else {
        std::vector<std::thread> pool;
        std::size_t per = (nleaves + nt - 1) / nt;
        for (unsigned t = 0; t < nt; ++t) {
            std::size_t lo = t * per, hi = std::min(nleaves, lo + per);
            if (lo >= hi) break;
            pool.emplace_back([&, lo, hi] {
                for (std::size_t k = lo; k < hi; ++k) do_leaf(k);
            });
        }
        for (auto& th : pool) th.join();
    }
    return detail::combine_tree(leaves, 0, nleaves);
}

} // namespace twistlab
