// Nearest-neighbor index. The specification is "identical to a brute-force
// linear scan with (distance, id) ordering", so the oracle is exactly that
// scan and every comparison is exact — no tolerances.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "incplan/point_index.hpp"
#include "incplan/random.hpp"

using namespace incplan;

namespace {

struct Ref {
    Point2 position;
    std::uint32_t id;
};

std::vector<Ref> brute_k_nearest(const std::vector<Ref> &all, Point2 q, std::size_t k,
                                 const std::vector<std::uint8_t> *keep = nullptr) {
    std::vector<Ref> sorted;
    for (const Ref &r : all) {
        if (keep == nullptr || (r.id < keep->size() && (*keep)[r.id] != 0)) {
            sorted.push_back(r);
        }
    }
    std::sort(sorted.begin(), sorted.end(), [&](const Ref &a, const Ref &b) {
        const double da = squared_distance(a.position, q);
        const double db = squared_distance(b.position, q);
        if (da != db) {
            return da < db;
        }
        return a.id < b.id;
    });
    if (sorted.size() > k) {
        sorted.resize(k);
    }
    return sorted;
}

std::vector<Ref> brute_within(const std::vector<Ref> &all, Point2 q, double radius) {
    std::vector<Ref> hits;
    for (const Ref &r : all) {
        if (squared_distance(r.position, q) <= radius * radius) {
            hits.push_back(r);
        }
    }
    std::sort(hits.begin(), hits.end(), [&](const Ref &a, const Ref &b) {
        const double da = squared_distance(a.position, q);
        const double db = squared_distance(b.position, q);
        if (da != db) {
            return da < db;
        }
        return a.id < b.id;
    });
    return hits;
}

void check_equal(const std::vector<PointIndex::Entry> &got, const std::vector<Ref> &want) {
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
        CHECK(got[i].id == want[i].id);
        CHECK(got[i].position == want[i].position);
    }
}

} // namespace

TEST_CASE("basic insert and nearest") {
    PointIndex idx;
    CHECK(idx.empty());
    CHECK_FALSE(idx.nearest({0, 0}).has_value());
    CHECK(idx.k_nearest({0, 0}, 3).empty());

    idx.insert({0.25, -0.5}, 7);
    const auto hit = idx.nearest({0, 0});
    REQUIRE(hit.has_value());
    CHECK(hit->id == 7);
    CHECK(hit->position == Point2{0.25, -0.5});
    CHECK(idx.size() == 1);

    CHECK_THROWS_AS(idx.insert({0.9, 0.9}, 7), std::invalid_argument);
}

TEST_CASE("hand-sized k-nearest") {
    PointIndex idx;
    idx.insert({0, 0}, 0);
    idx.insert({1, 0}, 1);
    idx.insert({2, 0}, 2);
    const auto two = idx.k_nearest({0.1, 0.0}, 2);
    REQUIRE(two.size() == 2);
    CHECK(two[0].id == 0);
    CHECK(two[1].id == 1);
    // k beyond the size returns everything, still ordered.
    const auto all = idx.k_nearest({0.1, 0.0}, 10);
    REQUIRE(all.size() == 3);
    CHECK(all[2].id == 2);
}

TEST_CASE("ties break by the lower id") {
    PointIndex idx;
    idx.insert({0.5, 0.0}, 9);
    idx.insert({-0.5, 0.0}, 3); // same distance from the origin
    idx.insert({0.5, 0.0}, 1);  // same position as id 9
    const auto got = idx.k_nearest({0.0, 0.0}, 3);
    REQUIRE(got.size() == 3);
    CHECK(got[0].id == 1);
    CHECK(got[1].id == 3);
    CHECK(got[2].id == 9);
    // Radius queries share the ordering rule.
    const auto within = idx.within_radius({0.0, 0.0}, 0.5);
    REQUIRE(within.size() == 3);
    CHECK(within[0].id == 1);
}

TEST_CASE("within_radius boundary is closed") {
    PointIndex idx;
    idx.insert({0.3, 0.0}, 0);
    idx.insert({0.0, 0.3}, 1);
    CHECK(idx.within_radius({0.0, 0.0}, 0.3).size() == 2);
    CHECK(idx.within_radius({0.3, 0.0}, 0.0).size() == 1); // r = 0 at a point
    CHECK(idx.within_radius({0.1, 0.1}, 0.0).empty());
}

TEST_CASE("randomized oracle equivalence over a growing index") {
    RandomStream rng(987654321);
    const AxisRect bounds{{-1.0, -1.0}, {1.0, 1.0}};
    PointIndex idx;
    std::vector<Ref> mirror;

    for (std::uint32_t i = 0; i < 1000; ++i) {
        const Point2 p = rng.uniform_in_rect(bounds);
        idx.insert(p, i);
        mirror.push_back({p, i});
    }
    REQUIRE(idx.size() == mirror.size());

    // A keep mask as used by pruning planners: exclude a random third.
    std::vector<std::uint8_t> keep(mirror.size(), 1);
    for (auto &flag : keep) {
        flag = rng.uniform01() < 0.34 ? 0 : 1;
    }

    for (int query = 0; query < 1000; ++query) {
        const Point2 q = rng.uniform_in_rect(bounds);
        const int mode = static_cast<int>(rng.uniform_int(4));
        switch (mode) {
        case 0: {
            const auto got = idx.nearest(q);
            const auto want = brute_k_nearest(mirror, q, 1);
            REQUIRE(got.has_value());
            CHECK(got->id == want[0].id);
            break;
        }
        case 1: {
            const std::size_t k = 1 + rng.uniform_int(20);
            check_equal(idx.k_nearest(q, k), brute_k_nearest(mirror, q, k));
            break;
        }
        case 2: {
            const double r = rng.uniform(0.0, 0.8);
            check_equal(idx.within_radius(q, r), brute_within(mirror, q, r));
            break;
        }
        default: {
            const std::size_t k = 1 + rng.uniform_int(20);
            check_equal(idx.k_nearest(q, k, &keep), brute_k_nearest(mirror, q, k, &keep));
            break;
        }
        }
    }

    // Interleave more inserts with queries so both the tree and the pending
    // buffer are exercised mid-stream.
    for (std::uint32_t i = 1000; i < 1200; ++i) {
        const Point2 p = rng.uniform_in_rect(bounds);
        idx.insert(p, i);
        mirror.push_back({p, i});
        const Point2 q = rng.uniform_in_rect(bounds);
        check_equal(idx.k_nearest(q, 16), brute_k_nearest(mirror, q, 16));
    }
}

TEST_CASE("degenerate configurations stay exact") {
    PointIndex idx;
    std::vector<Ref> mirror;
    // Many duplicates of one point and a colinear run: worst cases for
    // median splits and plane-distance pruning.
    for (std::uint32_t i = 0; i < 64; ++i) {
        const Point2 p = (i % 2 == 0) ? Point2{0.1, 0.1}
                                      : Point2{static_cast<double>(i) / 64.0, 0.0};
        idx.insert(p, i);
        mirror.push_back({p, i});
    }
    RandomStream rng(5);
    const AxisRect bounds{{-1.0, -1.0}, {1.0, 1.0}};
    for (int query = 0; query < 200; ++query) {
        const Point2 q = rng.uniform_in_rect(bounds);
        check_equal(idx.k_nearest(q, 8), brute_k_nearest(mirror, q, 8));
        const double r = rng.uniform(0.0, 1.0);
        check_equal(idx.within_radius(q, r), brute_within(mirror, q, r));
    }
}
