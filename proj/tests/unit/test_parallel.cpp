#include <gtest/gtest.h>

#include <atomic>
#include <stdexcept>
#include <thread>
#include <vector>

#include "pestpolicy/parallel.hpp"

using namespace pestpolicy;

TEST(Workers, ParsesEnvironmentValue) {
    const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
    EXPECT_EQ(worker_count_from("3"), 3u);
    EXPECT_EQ(worker_count_from("0"), hw);
    EXPECT_EQ(worker_count_from(""), hw);
    EXPECT_EQ(worker_count_from(nullptr), hw);
    EXPECT_EQ(worker_count_from("lots"), hw);
    EXPECT_EQ(worker_count_from("-2"), hw);
}

TEST(ParallelFor, EachIndexOnce) {
    std::vector<std::atomic<int>> hits(1000);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i]++; }, 8);
    for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
}

TEST(ParallelFor, EmptyRange) {
    bool called = false;
    parallel_for(0, [&](std::size_t) { called = true; }, 4);
    EXPECT_FALSE(called);
}

TEST(ParallelFor, RethrowsLowestFailingIndex) {
    for (std::size_t workers : {1u, 4u, 16u}) {
        try {
            parallel_for(
                200,
                [](std::size_t i) {
                    if (i % 37 == 5) throw std::runtime_error(std::to_string(i));
                },
                workers);
            FAIL() << "expected an exception";
        } catch (const std::runtime_error& e) {
            EXPECT_STREQ(e.what(), "5");
        }
    }
}
