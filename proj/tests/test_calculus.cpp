#include "doctest.h"
#include "qeuclid/calculus_checks.hpp"

using namespace qe;

namespace {

using F = Field<RatFunc>;

struct Fixture {
    explicit Fixture(int N) : A(Model<RatFunc>(N)), d(Model<RatFunc>(N)), C(A, d, Calc::unbarred), Cb(A, d, Calc::barred) {}
    Algebra<RatFunc> A;
    MatrixData<RatFunc> d;
    Calculus<RatFunc> C, Cb;
};

}  // namespace

TEST_SUITE("calculus") {

TEST_CASE("coordinate transport") {
    Fixture f(3);
    const auto& m = f.A.model();
    // x^1 xi^1 = q^2 xi^1 x^1, and q^-2 in the barred calculus
    CHECK(f.C.lmul(f.A.x(1), f.C.xi(1)) == f.C.rmul(f.C.xi(1), f.A.x(1)) * F(m.q(2)));
    CHECK(f.Cb.lmul(f.A.x(1), f.Cb.xi(1)) == f.Cb.rmul(f.Cb.xi(1), f.A.x(1)) * F(m.q(-2)));
    // Lambda commutes with xi
    for (int i : m.indices()) CHECK(f.C.comm(f.A.L(), f.C.xi(i)).is_zero());
    // transport through a generator and its inverse cancels
    for (int i : m.indices()) {
        auto w = f.C.rmul(f.C.rmul(f.C.xi(i), f.A.r(1)), f.A.r(1, -1));
        CHECK(w == f.C.xi(i));
    }
}

TEST_CASE("dirac form") {
    Fixture f(3);
    const auto& m = f.A.model();
    // theta = omega_1 q^{3/2} k^-1 r^-2 g_ij x^i xi^j
    OneForm<RatFunc> theta(Calc::unbarred);
    F pref(m.omega(1) * m.s(3) / m.k());
    for (int i : m.indices())
        theta += f.C.lmul(f.A.mul(f.A.r(1, -2), f.A.x(i)) * (pref * F(m.g(i, -i))), f.C.xi(-i));
    CHECK(theta == f.C.dirac());

    for (int N = 3; N <= 5; ++N) {
        Fixture g(N);
        for (int i : g.A.model().indices()) {
            CHECK(g.C.d(g.A.x(i)) == g.C.xi(i));
            CHECK(g.Cb.d(g.A.x(i)) == g.Cb.xi(i));
        }
        CHECK(g.C.d(g.A.one()).is_zero());
    }
}

TEST_CASE("leibniz rule on a product") {
    Fixture f(3);
    auto a = f.A.x(1), b = f.A.x(0);
    CHECK(f.C.d(f.A.mul(a, b)) == f.C.lmul(a, f.C.d(b)) + f.C.rmul(f.C.d(a), b));
    auto c = f.A.mul(f.A.r(1, -1), f.A.x(-1));
    CHECK(f.C.d(f.A.mul(c, b)) == f.C.lmul(c, f.C.d(b)) + f.C.rmul(f.C.d(c), b));
}

TEST_CASE("two-forms") {
    Fixture f(3);
    CHECK(f.C.wedge(f.C.xi(1), f.C.xi(1)).is_zero());
    const auto& m = f.A.model();
    // P_s and P_t parts of every xi^i xi^j vanish: P_a acts as the identity on the result
    for (int i : m.indices())
        for (int j : m.indices()) {
            auto w = f.C.wedge(f.C.xi(i), f.C.xi(j));
            std::map<std::pair<int, int>, Elem<RatFunc>> raw(w.coeffs().begin(), w.coeffs().end());
            CHECK(f.C.project(raw) == w);
        }
    // xi^0 xi^1 and xi^1 xi^0 are proportional
    auto a = f.C.wedge(f.C.xi(0), f.C.xi(1)), b = f.C.wedge(f.C.xi(1), f.C.xi(0));
    REQUIRE_FALSE(a.is_zero());
    const auto& [key, va] = *a.coeffs().begin();
    F ratio = va.scalar() / b.at(key.first, key.second).scalar();
    for (const auto& [k, v] : b.coeffs()) CHECK(v * ratio == a.at(k.first, k.second));
}

TEST_CASE("star of forms") {
    Fixture f(3);
    const auto& m = f.A.model();
    CHECK(star_form(f.C, f.Cb, f.C.xi(0)) == f.Cb.xi(0));
    CHECK(star_form(f.C, f.Cb, f.C.xi(1)) == f.Cb.xi(-1) * F(m.g(-1, 1)));
    for (int i : m.indices()) CHECK(star_form(f.Cb, f.C, star_form(f.C, f.Cb, f.C.xi(i))) == f.C.xi(i));
    CHECK(star_form(f.C, f.Cb, f.C.dirac()) == f.Cb.dirac() * F(-1));
}

TEST_CASE("check functions") {
    for (int N = 3; N <= 4; ++N) {
        Fixture f(N);
        for (const auto* C : {&f.C, &f.Cb}) {
            for (const auto& r : {check_dirac(*C), check_xixi(*C), check_transport(*C), check_bimodule(*C, 20, 1),
                                  check_leibniz(*C, 20, 1)}) {
                CAPTURE(N);
                CAPTURE(r.id);
                CAPTURE(r.witness);
                CHECK(r.pass);
            }
        }
        CHECK(check_star_forms(f.C, f.Cb).pass);
        CHECK(check_star_forms(f.Cb, f.C).pass);
    }
}

TEST_CASE("printing") {
    Fixture f(3);
    CHECK(f.C.str(f.C.xi(1)) == "xi{1}");
    CHECK(f.Cb.str(f.Cb.xi(-1)) == "bxi{-1}");
    CHECK_THROWS(f.C.xi(2));
}

}
