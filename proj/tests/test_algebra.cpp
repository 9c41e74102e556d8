#include <random>

#include "doctest.h"
#include "qeuclid/algebra_checks.hpp"

using namespace qe;

namespace {

using F = Field<RatFunc>;

}  // namespace

TEST_SUITE("algebra") {

TEST_CASE("tabulated products") {
    Algebra<RatFunc> A3{Model<RatFunc>(3)}, A4{Model<RatFunc>(4)}, A5{Model<RatFunc>(5)};
    const auto& m3 = A3.model();

    // [x^1, x^-1] = h (x^0)^2 for N = 3
    CHECK(A3.comm(A3.x(1), A3.x(-1)) == A3.mul(A3.x(0), A3.x(0)) * F(m3.h()));
    // x^1 Lambda = q Lambda x^1
    CHECK(A3.mul(A3.x(1), A3.L()) == A3.mul(A3.L(), A3.x(1)) * F(m3.q()));
    // x^2 r_1 = q^-1 r_1 x^2 for N = 5
    CHECK(A5.mul(A5.x(2), A5.r(1)) == A5.mul(A5.r(1), A5.x(2)) * F(A5.model().q(-1)));
    // K x^1 = q x^1 K and K x^2 = x^2 K for N = 4
    CHECK(A4.mul(A4.K(), A4.x(1)) == A4.mul(A4.x(1), A4.K()) * F(A4.model().q()));
    CHECK(A4.comm(A4.K(), A4.x(2)).is_zero());
    // [x^1, x^-1] = 0 and [x^2, x^-2] = k omega_1^-1 r_1^2 for N = 4
    CHECK(A4.comm(A4.x(1), A4.x(-1)).is_zero());
    const auto& m4 = A4.model();
    CHECK(A4.comm(A4.x(2), A4.x(-2)) == A4.r2(1) * F(m4.k() / m4.omega(1)));

    Elem<RatFunc> a = A5.x(2) + A5.mul(A5.L(), A5.r(1, -1));
    CHECK(A5.mul(a, A5.one()) == a);
    CHECK(A5.mul(A5.one(), a) == a);
    CHECK(A5.pow(A5.r(2), 3) == A5.r(2, 3));
    CHECK(A5.mul(A5.r(2, -1), A5.r(2)) == A5.one());
}

TEST_CASE("r_n^2 is central and r_j^2 is the metric contraction") {
    for (int N = 3; N <= 6; ++N) {
        CAPTURE(N);
        Algebra<RatFunc> A{Model<RatFunc>(N)};
        const auto& m = A.model();
        for (int i : m.indices()) CHECK(A.comm(A.r2(m.n()), A.x(i)).is_zero());
        CHECK_FALSE(A.comm(A.r2(m.n()), A.L()).is_zero());
        // r_n^2 = g_{ij} x^i x^j
        Elem<RatFunc> sum;
        for (int i : m.indices()) sum += A.mul(A.x(i), A.x(-i)) * F(m.g(i, -i));
        CHECK(sum == A.r2(m.n()));
    }
}

TEST_CASE("grading") {
    Algebra<RatFunc> A{Model<RatFunc>(5)};
    CHECK(A.grading(A.mul(A.x(1), A.x(-1)), 1) == 0);
    CHECK(A.grading(A.x(2), 2) == 1);
    CHECK(A.grading(A.x(-2), 2) == -1);
    CHECK_FALSE(A.grading(A.x(2) + A.x(1), 2).has_value());
    // rewriting preserves the grading of every word
    std::mt19937 rng(5);
    WordOptions opt;
    opt.max_len = 4;
    for (int t = 0; t < 100; ++t) {
        auto w = random_word(A, rng, opt);
        int expect = 0;
        for (auto [slot, e] : w)
            if (A.is_x(slot)) {
                int i = A.x_index(slot);
                if (i == 2) expect += e;
                if (i == -2) expect -= e;
            }
        auto p = word_product(A, w, Fold::left, rng);
        if (!p.is_zero()) CHECK(A.grading(p, 2) == expect);
    }
}

TEST_CASE("associativity on random triples") {
    for (int N = 3; N <= 4; ++N) {
        Algebra<RatFunc> A{Model<RatFunc>(N)};
        std::mt19937 rng(100 + N);
        for (int t = 0; t < 60; ++t) {
            auto a = random_element(A, rng), b = random_element(A, rng), c = random_element(A, rng);
            CHECK(A.mul(A.mul(a, b), c) == A.mul(a, A.mul(b, c)));
            CHECK(A.mul(a, b + c) == A.mul(a, b) + A.mul(a, c));
        }
    }
}

TEST_CASE("star") {
    Algebra<RatFunc> A{Model<RatFunc>(3)};
    const auto& m = A.model();
    // (x^i)^* = x^j g_{ji}
    CHECK(A.star(A.x(1)) == A.x(-1) * F(m.g(-1, 1)));
    CHECK(A.star(A.x(0)) == A.x(0));
    CHECK(A.star(A.L()) == A.L(-1));
    for (int i : m.indices()) CHECK(A.star(A.star(A.x(i))) == A.x(i));
    auto a = A.x(1), b = A.x(0);
    CHECK(A.star(A.mul(a, b)) == A.mul(A.star(b), A.star(a)));
}

TEST_CASE("embedding into N + 2") {
    Algebra<RatFunc> A3{Model<RatFunc>(3)}, A5{Model<RatFunc>(5)};
    CHECK(A3.embed_into(A5, A3.x(1)) == A5.x(1));
    CHECK(A3.embed_into(A5, A3.L()) == A5.L());
    auto lhs = A3.embed_into(A5, A3.mul(A3.x(1), A3.x(-1)));
    auto rhs = A5.mul(A5.x(1), A5.x(-1));
    CHECK(lhs == rhs);
    CHECK_THROWS(A3.embed_into(Algebra<RatFunc>(Model<RatFunc>(4)), A3.x(1)));
}

TEST_CASE("domain errors") {
    Algebra<RatFunc> A{Model<RatFunc>(4)};
    CHECK_THROWS(A.x(3));
    CHECK_THROWS(A.x(0));
    CHECK_THROWS(A.r(5));
}

TEST_CASE("check functions") {
    for (int N = 3; N <= 5; ++N) {
        CAPTURE(N);
        Algebra<RatFunc> A{Model<RatFunc>(N)}, big{Model<RatFunc>(N + 2)};
        MatrixData<RatFunc> d{Model<RatFunc>(N)};
        for (const auto& r : {check_xrel(d, A), check_explicitx(A), check_generator_rel(A), check_defr(A),
                              check_center(A), check_rutil2(A), check_confluence(A, 50, 1), check_grading(A, 50, 1),
                              check_star_alg(A, 30, 1), check_embed(A, big, 30, 1)}) {
            CAPTURE(r.id);
            CAPTURE(r.witness);
            CHECK(r.pass);
        }
    }
}

TEST_CASE("recursive r_i^2 form fails only at i = 1 for N odd") {
    Algebra<RatFunc> A4{Model<RatFunc>(4)};
    CHECK(check_rutil1(A4).pass);
    for (int N : {3, 5}) {
        Algebra<RatFunc> A{Model<RatFunc>(N)};
        auto r = check_rutil1(A);
        CAPTURE(r.witness);
        CHECK_FALSE(r.pass);
        CHECK(r.witness.find("at i=1") != std::string::npos);
        CHECK(r.witness.find("at i=2") == std::string::npos);
        CHECK(r.value == "i=1 with omega_0 = q^1/2 + q^-1/2: zero");
    }
}

}
