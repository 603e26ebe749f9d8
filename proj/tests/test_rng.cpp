#include <doctest.h>

#include <set>

#include "recsim/rng.hpp"

using recsim::CounterStream;
using recsim::PhiloxCounter;

TEST_CASE("philox4x32-10 known-answer vectors") {
    CHECK(recsim::philox4x32_10({0, 0, 0, 0}, {0, 0}) ==
          PhiloxCounter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
    CHECK(recsim::philox4x32_10({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
          PhiloxCounter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
    CHECK(recsim::philox4x32_10({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
          PhiloxCounter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("fnv1a64 reference values") {
    CHECK(recsim::fnv1a64("") == 0xcbf29ce484222325ULL);
    CHECK(recsim::fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
    CHECK(recsim::fnv1a64("foobar") == 0x85944171f73967e8ULL);
}

TEST_CASE("sequential draws equal random-access blocks") {
    CounterStream seq(42, 7);
    const CounterStream ra(42, 7);
    for (std::uint64_t b = 0; b < 100; ++b) {
        const auto block = ra.block(b);
        CHECK(seq() == block[0]);
        CHECK(seq() == block[1]);
    }
    CounterStream offset(42, 7, 50);
    CHECK(offset() == ra.block(50)[0]);
}

TEST_CASE("streams and seeds are distinct") {
    std::set<std::uint64_t> seen;
    for (std::uint64_t seed = 0; seed < 4; ++seed)
        for (std::uint64_t stream = 0; stream < 64; ++stream)
            for (std::uint64_t b = 0; b < 4; ++b) seen.insert(CounterStream(seed, stream).block(b)[0]);
    CHECK(seen.size() == 4 * 64 * 4);
    CHECK(CounterStream(1, recsim::kInitStream).block(0) != CounterStream(1, 0).block(0));
}

TEST_CASE("unit_interval range") {
    CHECK(recsim::unit_interval(0) == 0.0);
    CHECK(recsim::unit_interval(~0ULL) < 1.0);
    CHECK(recsim::unit_interval(~0ULL) == 1.0 - 0x1.0p-53);
    CounterStream s(9, 0);
    double mean = 0.0;
    for (int i = 0; i < 100000; ++i) mean += s.uniform();
    CHECK(mean / 100000 == doctest::Approx(0.5).epsilon(0.01));
}
