#include <vector>

#include "doctest.h"
#include "qeuclid/rmatrix.hpp"

using namespace qe;

namespace {

// Dense square matrix over Q.
struct Dense {
    int n;
    std::vector<mpq_class> a;
    explicit Dense(int n) : n(n), a(static_cast<size_t>(n) * n) {}
    mpq_class& operator()(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
    const mpq_class& operator()(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }
    static Dense eye(int n) {
        Dense d(n);
        for (int i = 0; i < n; ++i) d(i, i) = 1;
        return d;
    }
    Dense operator*(const Dense& o) const {
        Dense r(n);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
                if ((*this)(i, k) == 0) continue;
                for (int j = 0; j < n; ++j) r(i, j) += (*this)(i, k) * o(k, j);
            }
        return r;
    }
    Dense operator-(const Dense& o) const {
        Dense r = *this;
        for (size_t i = 0; i < a.size(); ++i) r.a[i] -= o.a[i];
        return r;
    }
    Dense scaled(const mpq_class& c) const {
        Dense r = *this;
        for (auto& v : r.a) v *= c;
        return r;
    }
    bool is_zero() const {
        for (const auto& v : a)
            if (v != 0) return false;
        return true;
    }
    int rank() const {
        Dense m = *this;
        int r = 0;
        for (int c = 0; c < n && r < n; ++c) {
            int p = r;
            while (p < n && m(p, c) == 0) ++p;
            if (p == n) continue;
            for (int j = 0; j < n; ++j) std::swap(m(p, j), m(r, j));
            for (int i = 0; i < n; ++i) {
                if (i == r || m(i, c) == 0) continue;
                mpq_class f = m(i, c) / m(r, c);
                for (int j = 0; j < n; ++j) m(i, j) -= f * m(r, j);
            }
            ++r;
        }
        return r;
    }
};

Dense kron(const Dense& x, const Dense& y) {
    Dense r(x.n * y.n);
    for (int i = 0; i < x.n; ++i)
        for (int j = 0; j < x.n; ++j)
            if (x(i, j) != 0)
                for (int k = 0; k < y.n; ++k)
                    for (int l = 0; l < y.n; ++l) r(i * y.n + k, j * y.n + l) = x(i, j) * y(k, l);
    return r;
}

// R-hat at q = s^2 with rational s, assembled entry by entry from its
// summand families: q on (i,i|i,i), 1 on (i,j|j,i) for j != +-i or i = j = 0,
// 1/q on (i,-i|-i,i), and for i < j: k on (i,j|i,j) and
// -k q^{rho_j - rho_i} on (i,-i|-j,j).
Dense oracle_rhat(const Model<QNum>& m, const mpq_class& s) {
    const int N = m.N();
    const mpq_class q = s * s, k = q - 1 / q;
    auto spow = [&](int e) {
        mpq_class r = 1;
        for (int t = 0; t < std::abs(e); ++t) r *= s;
        return e < 0 ? mpq_class(1 / r) : r;
    };
    Dense R(N * N);
    auto add = [&](int i, int j, int a, int b, const mpq_class& v) {
        R(m.pos(i) * N + m.pos(j), m.pos(a) * N + m.pos(b)) += v;
    };
    for (int i : m.indices()) {
        if (i != 0) add(i, i, i, i, q);
        if (i != 0) add(i, -i, -i, i, 1 / q);
        for (int j : m.indices()) {
            if ((i != j && i != -j) || (i == 0 && j == 0)) add(i, j, j, i, 1);
            if (i < j) {
                add(i, j, i, j, k);
                add(i, -i, -j, j, -k * spow(m.rho2(j) - m.rho2(i)));
            }
        }
    }
    return R;
}

Dense to_dense(const Model<QNum>& m, const Tensor<QNum>& t) {
    const int N = m.N();
    Dense d(N * N);
    for (const auto& [key, v] : t.entries()) {
        REQUIRE(v.is_rational());
        d(m.pos(key[0]) * N + m.pos(key[1]), m.pos(key[2]) * N + m.pos(key[3])) = v.a();
    }
    return d;
}

}  // namespace

TEST_SUITE("rmatrix") {

TEST_CASE("R-hat matches the dense oracle and its identities at q = 9/4") {
    const mpq_class s(3, 2), q = s * s;
    for (int N = 3; N <= 6; ++N) {
        CAPTURE(N);
        Model<QNum> m(N, Scalars<QNum>(q));
        MatrixData<QNum> d(m);
        Dense R = oracle_rhat(m, s);
        CHECK((to_dense(m, d.rhat) - R).is_zero());

        Dense I = Dense::eye(N * N);
        // cubic minimal polynomial
        mpq_class t = 1;
        for (int e = 0; e < N - 1; ++e) t /= q;
        CHECK(((R - I.scaled(q)) * (R - I.scaled(-1 / q)) * (R - I.scaled(t))).is_zero());

        // braid relation by Kronecker products
        if (N <= 4) {
            Dense E = Dense::eye(N);
            Dense R12 = kron(R, E), R23 = kron(E, R);
            CHECK((R12 * R23 * R12 - R23 * R12 * R23).is_zero());
        }

        // inverse and projector ranks
        CHECK((to_dense(m, d.rinv) * R - I).is_zero());
        CHECK(to_dense(m, d.proj.s).rank() == N * (N + 1) / 2 - 1);
        CHECK(to_dense(m, d.proj.a).rank() == N * (N - 1) / 2);
        CHECK(to_dense(m, d.proj.t).rank() == 1);
    }
}

TEST_CASE("tabulated entries and metric") {
    Model<RatFunc> m3(3);
    MatrixData<RatFunc> d(m3);
    CHECK(d.rhat.at(1, 1, 1, 1) == m3.q());
    // rho = (-1/2, 0, 1/2) on indices (-1, 0, 1)
    CHECK(m3.g(1, -1) == m3.s(1));
    CHECK(m3.g(-1, 1) == m3.s(-1));
    CHECK(m3.g(0, 0) == RatFunc(1));

    for (int N = 3; N <= 7; ++N) {
        Model<RatFunc> m(N);
        RatFunc sum = 0, sum_rho = 0;
        for (int i : m.indices()) {
            for (int j : m.indices()) sum += m.g(i, j) * m.g(i, j);
            sum_rho += m.s(-2 * m.rho2(i));
        }
        CHECK(sum == sum_rho);
        int n = m.n();
        // P_t prefactor k / (omega_n (q^{1 - rho_n} - q^{rho_n - 1}))
        RatFunc pref = m.k() / (m.omega(n) * (m.s(2 - m.rho2(n)) - m.s(m.rho2(n) - 2)));
        CHECK(sum * pref == RatFunc(1));
    }
}

TEST_CASE("projectors") {
    for (int N = 3; N <= 5; ++N) {
        MatrixData<RatFunc> d{Model<RatFunc>(N)};
        auto sum = d.proj.s + d.proj.a + d.proj.t;
        CHECK((sum - Tensor<RatFunc>::identity(d.model)).is_zero());
        CHECK((d.proj.a * d.proj.a - d.proj.a).is_zero());
        CHECK((d.proj.s * d.proj.t).is_zero());
        // P_t = (g^{sm} g_{sm})^{-1} g^{ij} g_{kl}
        RatFunc tr = 0;
        for (int i : d.model.indices()) tr += d.model.g(i, -i) * d.model.g(i, -i);
        CHECK((d.proj.t - d.gg.scaled(tr.inv())).is_zero());
    }
}

TEST_CASE("identity checks pass symbolically and numerically") {
    for (int N = 3; N <= 5; ++N) {
        CAPTURE(N);
        MatrixData<RatFunc> d{Model<RatFunc>(N)};
        for (const auto& r : {check_braid(d), check_braid2(d), check_propR1(d), check_propR2(d), check_propR3(d),
                              check_squareR(d), check_gRrel(d), check_metric(d), check_projectors(d), check_Pt(d)}) {
            CAPTURE(r.id);
            CAPTURE(r.witness);
            CHECK(r.pass);
        }
        MatrixData<QNum> dn{Model<QNum>(N, Scalars<QNum>(mpq_class(7, 5)))};
        for (const auto& r : {check_braid(dn), check_propR2(dn), check_squareR(dn), check_ranks(dn)}) {
            CAPTURE(r.id);
            CAPTURE(r.witness);
            CHECK(r.pass);
        }
    }
}

TEST_CASE("a corrupted R-hat is caught") {
    Model<RatFunc> m(3);
    Tensor<RatFunc> bad = build_rhat(m);
    bad.add(1, 0, 0, 1, RatFunc(1));
    CHECK_FALSE(braid_residual(bad).empty());
    MatrixData<RatFunc> d(m);
    d.rhat = bad;
    CHECK_FALSE(check_squareR(d).pass);
    CHECK_FALSE(check_propR1(d).pass);
}

TEST_CASE("tensors are copyable and re-index after edits") {
    Model<RatFunc> m(3);
    Tensor<RatFunc> t = build_rhat(m);
    size_t before = t.row(1, 1).size();
    Tensor<RatFunc> u = t;
    u.add(1, 1, 0, 0, RatFunc(5));
    CHECK(u.row(1, 1).size() == before + 1);
    CHECK(t.row(1, 1).size() == before);
    t = u;
    CHECK(t.row(1, 1).size() == before + 1);
}

}
