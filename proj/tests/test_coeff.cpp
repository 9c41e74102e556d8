#include <random>

#include "doctest.h"
#include "qeuclid/frames.hpp"
#include "qeuclid/model.hpp"

using namespace qe;

namespace {

// Random Laurent-style rational function num/den with small integer coefficients.
RatFunc random_ratfunc(std::mt19937& rng) {
    std::uniform_int_distribution<int> deg(0, 3), co(-4, 4), shift(-3, 3);
    auto poly = [&](bool nonzero) {
        for (;;) {
            Poly p;
            int d = deg(rng);
            for (int i = 0; i <= d; ++i) p += Poly::monomial(mpz_class(co(rng)), i);
            if (!nonzero || !p.is_zero()) return p;
        }
    };
    return RatFunc(poly(false), poly(true)).mul_spow(shift(rng));
}

const mpq_class kPoints[] = {mpq_class(3, 2), mpq_class(-7, 5), mpq_class(11, 3), mpq_class(2, 9)};

// Evaluation at a point, or nullopt at a pole.
std::optional<mpq_class> at(const RatFunc& f, const mpq_class& s) {
    try {
        return f.eval(s);
    } catch (const std::domain_error&) {
        return std::nullopt;
    }
}

}  // namespace

TEST_SUITE("coeff") {

TEST_CASE("poly arithmetic") {
    Poly a = Poly(1) + Poly::monomial(2, 1);  // 1 + 2s
    Poly b = Poly(-1) + Poly::monomial(1, 2);  // s^2 - 1
    CHECK((a * b).degree() == 3);
    CHECK((a * b).divexact(b) == a);
    CHECK_THROWS((a * b + Poly(1)).divexact(b));
    CHECK(gcd(a * b, b * b) == b);
    CHECK(Poly::monomial(3, 2).shifted(-2) == Poly(3));
    CHECK((Poly(1) + Poly::monomial(5, 3)).reversed() == Poly(5) + Poly::monomial(1, 3));
    CHECK((Poly::monomial(4, 1) * Poly(6)).content() == 24);
    CHECK(a.eval(mpq_class(1, 2)) == 2);
}

TEST_CASE("ratfunc is canonical") {
    Poly sm1 = Poly(-1) + Poly::monomial(1, 1);  // s - 1
    Poly sp1 = Poly(1) + Poly::monomial(1, 1);
    RatFunc f(sm1 * sp1, sm1 * Poly(2));
    CHECK(f == RatFunc(sp1 * Poly(1), Poly(2)));
    CHECK(f.den().lead() > 0);
    CHECK(RatFunc(Poly(3), Poly(-6)) == RatFunc(mpq_class(-1, 2)));
    CHECK((f - f).is_zero());
    CHECK((f / f).is_one());
    CHECK_THROWS_AS(RatFunc(0).inv(), std::domain_error);
}

TEST_CASE("ratfunc field operations agree with evaluation") {
    std::mt19937 rng(7);
    for (int t = 0; t < 300; ++t) {
        RatFunc a = random_ratfunc(rng), b = random_ratfunc(rng);
        for (const auto& s : kPoints) {
            auto va = at(a, s), vb = at(b, s);
            if (!va || !vb) continue;
            if (auto v = at(a + b, s)) CHECK(*v == *va + *vb);
            if (auto v = at(a - b, s)) CHECK(*v == *va - *vb);
            if (auto v = at(a * b, s)) CHECK(*v == *va * *vb);
            if (!b.is_zero() && *vb != 0)
                if (auto v = at(a / b, s)) CHECK(*v == *va / *vb);
            if (auto v = at(a.bar(), 1 / s)) CHECK(*v == *va);
        }
        CHECK(a.bar().bar() == a);
        CHECK((a * b).bar() == a.bar() * b.bar());
        CHECK(a * (b + a) == a * b + a * a);
    }
}

TEST_CASE("qnum field operations") {
    auto pt = QPoint::make(mpq_class(3, 2));
    CHECK_FALSE(pt->rational_s);
    Scalars<QNum> sc(mpq_class(3, 2));
    QNum s = sc.spow(1);
    CHECK(s * s == QNum(mpq_class(3, 2)));
    CHECK(sc.spow(-3) * sc.spow(3) == QNum(1));
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> co(-9, 9);
    for (int t = 0; t < 200; ++t) {
        QNum a(mpq_class(co(rng), 1 + std::abs(co(rng))), mpq_class(co(rng), 2), pt.get());
        QNum b(mpq_class(co(rng), 3), mpq_class(co(rng), 1 + std::abs(co(rng))), pt.get());
        CHECK(a * (a + b) == a * a + a * b);
        if (!b.is_zero()) CHECK((a / b) * b == a);
    }
    // perfect-square q collapses onto the rationals
    Scalars<QNum> sq(mpq_class(9, 4));
    CHECK(sq.spow(1).is_rational());
    CHECK(sq.spow(1) == QNum(mpq_class(3, 2)));
}

TEST_CASE("symbolic and numeric scalars agree") {
    std::mt19937 rng(11);
    Scalars<QNum> sc(mpq_class(25, 4));  // s = 5/2
    for (int t = 0; t < 100; ++t) {
        RatFunc f = random_ratfunc(rng);
        auto v = at(f, mpq_class(5, 2));
        if (!v) continue;
        // Horner on the numeric point
        QNum num(0), den(0);
        const auto& nc = f.num().coeffs();
        const auto& dc = f.den().coeffs();
        for (size_t i = 0; i < nc.size(); ++i) num += QNum(mpq_class(nc[i])) * sc.spow(static_cast<int>(i));
        for (size_t i = 0; i < dc.size(); ++i) den += QNum(mpq_class(dc[i])) * sc.spow(static_cast<int>(i));
        CHECK(num / den == QNum(*v));
    }
}

TEST_CASE("model constants") {
    Model<RatFunc> m3(3), m5(5);
    CHECK(m3.h() * (m3.s(1) + m3.s(-1)) == m3.k());
    CHECK(m3.omega(0) == RatFunc(2));
    Model<QNum> n5(5, Scalars<QNum>(mpq_class(4)));
    CHECK(n5.k() == QNum(mpq_class(15, 4)));
    CHECK(n5.h() == QNum(mpq_class(3, 2)));
    CHECK(n5.omega(1) == QNum(mpq_class(5, 2)));
    CHECK((-m5.k()).bar() == m5.k());  // bar k = -k
    CHECK(m5.s(m5.rho2(2)).bar() == m5.s(-m5.rho2(2)));
    CHECK(m5.rho2(2) == -3);
    for (int i : m5.indices())
        for (int j : m5.indices()) {
            RatFunc gg = 0;
            for (int l : m5.indices()) gg += m5.g(i, l) * m5.g(l, j);
            CHECK(gg == RatFunc(i == j ? 1 : 0));
        }
}

TEST_CASE("normalization constants") {
    Model<RatFunc> m3(3), m5(5);
    const RatFunc q = m5.q(), h = m5.h(), k = m5.k();
    CHECK(gamma_product(m3, Calc::unbarred, 1) == -m3.q(-1) / (m3.h() * m3.h()));
    CHECK(gamma_product(m5, Calc::unbarred, 2) == -q.inv() / (k * k) * m5.omega(2) * m5.omega(1));

    auto G = make_gammas(m5, RadMode::theorem3);
    using F = Field<RatFunc>;
    CHECK(G.g.at(1) * G.g.at(1) == F(-q.inv() * q.inv() / (h * h)));
    CHECK(G.g.at(2) * G.g.at(2) == F(-q.inv() * q.inv() * m5.omega(2) * m5.omega(1) / (k * k)));
    CHECK(G.g.at(-2) == G.g.at(2) * F(q));

    auto T = make_gammas(m5, RadMode::transcendental);
    CHECK(T.g.at(2) * T.g.at(-2) == F(gamma_product(m5, Calc::unbarred, 2)));
    CHECK_THROWS_AS(T.g.at(1).star(), std::logic_error);
    auto L = make_gammas(m5, RadMode::star_link);
    CHECK(L.g.at(1).star().star() == L.g.at(1));
}

}
