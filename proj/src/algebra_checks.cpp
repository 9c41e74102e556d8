#include "qeuclid/algebra_checks.hpp"

#include <cstdlib>

namespace qe {

namespace {

template <class S>
std::string cfg(const Algebra<S>& A) {
    return A.model().scalars().label();
}

std::string idx(std::initializer_list<int> v) {
    std::string r = "(";
    bool first = true;
    for (int i : v) {
        if (!first) r += ",";
        r += std::to_string(i);
        first = false;
    }
    return r + ")";
}

template <class S>
std::vector<int> word_slots(const Algebra<S>& A, const WordOptions& opt) {
    std::vector<int> slots;
    if (opt.dilatator) {
        slots.push_back(A.slot_L());
        if (!A.odd()) slots.push_back(A.slot_K());
    }
    if (opt.radii)
        for (int j = 1; j <= A.n(); ++j) slots.push_back(A.slot_r(j));
    for (int i : A.model().indices()) slots.push_back(A.slot_x(i));
    return slots;
}

template <class S>
Field<S> random_coeff(const Algebra<S>& A, std::mt19937& rng) {
    static const int ints[] = {1, -1, 2, -3};
    std::uniform_int_distribution<int> pick(0, 3), sp(-2, 2);
    S c = A.model().s(sp(rng)) * S(ints[pick(rng)]);
    return Field<S>(c);
}

// Sum of Sigma g_{kl} x^k x^l over |k|, |l| <= i, computed in the x-subalgebra.
template <class S>
Elem<S> radius_polynomial(const Algebra<S>& A, int i) {
    const auto& m = A.model();
    Elem<S> acc;
    for (int k : m.indices())
        if (std::abs(k) <= i) acc += A.mul(A.x(k), A.x(-k)) * Field<S>(m.g(k, -k));
    return acc;
}

}  // namespace

template <class S>
std::vector<std::pair<int, int>> random_word(const Algebra<S>& A, std::mt19937& rng, const WordOptions& opt) {
    auto slots = word_slots(A, opt);
    std::uniform_int_distribution<int> len(1, opt.max_len), pick(0, static_cast<int>(slots.size()) - 1);
    std::uniform_int_distribution<int> inv_exp(-2, 1), pos_exp(1, 2);
    std::vector<std::pair<int, int>> w;
    int L = len(rng);
    for (int t = 0; t < L; ++t) {
        int g = slots[pick(rng)];
        int e;
        if (A.invertible(g)) {
            e = inv_exp(rng);
            if (e >= 0) e += 1;
        } else {
            e = pos_exp(rng);
        }
        w.emplace_back(g, e);
    }
    return w;
}

template <class S>
Elem<S> word_product(const Algebra<S>& A, const std::vector<std::pair<int, int>>& w, Fold f, std::mt19937& rng) {
    std::vector<Elem<S>> parts;
    for (const auto& [g, e] : w) parts.push_back(A.gen(g, e));
    if (parts.empty()) return A.one();
    if (f == Fold::left) {
        Elem<S> r = parts[0];
        for (size_t i = 1; i < parts.size(); ++i) r = A.mul(r, parts[i]);
        return r;
    }
    if (f == Fold::right) {
        Elem<S> r = parts.back();
        for (size_t i = parts.size() - 1; i-- > 0;) r = A.mul(parts[i], r);
        return r;
    }
    while (parts.size() > 1) {
        std::uniform_int_distribution<size_t> at(0, parts.size() - 2);
        size_t p = at(rng);
        parts[p] = A.mul(parts[p], parts[p + 1]);
        parts.erase(parts.begin() + static_cast<long>(p) + 1);
    }
    return parts[0];
}

template <class S>
Elem<S> random_element(const Algebra<S>& A, std::mt19937& rng, const WordOptions& opt) {
    std::uniform_int_distribution<int> nterms(1, opt.max_terms);
    Elem<S> r;
    int T = nterms(rng);
    for (int t = 0; t < T; ++t) r += word_product(A, random_word(A, rng, opt), Fold::left, rng) * random_coeff(A, rng);
    return r;
}

template <class S>
CheckResult check_xrel(const MatrixData<S>& d, const Algebra<S>& A) {
    Stopwatch sw;
    Residual r;
    for (int i : d.model.indices())
        for (int j : d.model.indices()) {
            Elem<S> acc;
            for (const auto& en : d.proj.a.row(i, j)) acc += A.mul(A.x(en.a), A.x(en.b)) * Field<S>(en.v);
            r.expect(acc.is_zero(), "P_a x x at " + idx({i, j}) + ": " + A.str(acc));
        }
    return make_result("xrel", A.N(), cfg(A), r, sw);
}

template <class S>
CheckResult check_explicitx(const Algebra<S>& A) {
    Stopwatch sw;
    Residual r;
    const auto& m = A.model();
    using C = Field<S>;
    for (int i : m.indices())
        for (int j : m.indices()) {
            if (i >= j || i == -j) continue;
            Elem<S> res = A.mul(A.x(i), A.x(j)) - A.mul(A.x(j), A.x(i)) * C(m.q());
            r.expect(res.is_zero(), "x^i x^j - q x^j x^i at " + idx({i, j}) + ": " + A.str(res));
        }
    for (int i = 1; i <= m.n(); ++i) {
        Elem<S> c = A.comm(A.x(i), A.x(-i));
        Elem<S> want;
        if (i > 1) want = radius_polynomial(A, i - 1) * C(m.k() * m.omega(i - 1).inv());
        else if (A.odd()) want = A.mul(A.x(0), A.x(0)) * C(m.h());
        Elem<S> res = c - want;
        r.expect(res.is_zero(), "[x^i, x^-i] at i=" + std::to_string(i) + ": " + A.str(res));
    }
    return make_result("explicitx", A.N(), cfg(A), r, sw);
}

template <class S>
CheckResult check_generator_rel(const Algebra<S>& A) {
    Stopwatch sw;
    Residual r;
    const auto& m = A.model();
    using C = Field<S>;
    int i0 = A.odd() ? 0 : 1;
    for (int i = i0; i <= m.n(); ++i) {
        Elem<S> r2 = radius_polynomial(A, i);
        Elem<S> ri = A.r(i);
        for (int j : m.indices()) {
            int e = std::abs(j) <= i ? 0 : (j < -i ? 1 : -1);
            Elem<S> res2 = A.mul(A.x(j), r2) - A.mul(r2, A.x(j)) * C(m.q(2 * e));
            r.expect(res2.is_zero(), "x^j r_i^2 at " + idx({j, i}) + ": " + A.str(res2));
            Elem<S> res1 = A.mul(A.x(j), ri) - A.mul(ri, A.x(j)) * C(m.q(e));
            r.expect(res1.is_zero(), "x^j r_i at " + idx({j, i}) + ": " + A.str(res1));
        }
    }
    for (int i : m.indices()) {
        Elem<S> res = A.mul(A.x(i), A.L()) - A.mul(A.L(), A.x(i)) * C(m.q());
        r.expect(res.is_zero(), "x^i L - q L x^i at i=" + std::to_string(i) + ": " + A.str(res));
    }
    if (!A.odd()) {
        for (int i : m.indices()) {
            int e = i == 1 ? 1 : (i == -1 ? -1 : 0);
            Elem<S> res = A.mul(A.K(), A.x(i)) - A.mul(A.x(i), A.K()) * C(m.q(e));
            r.expect(res.is_zero(), "K x^i - q^{+-1} x^i K at i=" + std::to_string(i) + ": " + A.str(res));
        }
        Elem<S> res = A.comm(A.K(), A.L());
        r.expect(res.is_zero(), "[K, L]: " + A.str(res));
    }
    return make_result("generator-rel", A.N(), cfg(A), r, sw);
}

template <class S>
CheckResult check_defr(const Algebra<S>& A) {
    Stopwatch sw;
    Residual r;
    const auto& m = A.model();
    for (int i = A.odd() ? 0 : 1; i <= m.n(); ++i) {
        Elem<S> res = radius_polynomial(A, i) - A.r2(i);
        r.expect(res.is_zero(), "r_i^2 - g_kl x^k x^l at i=" + std::to_string(i) + ": " + A.str(res));
    }
    if (!A.odd()) {
        Elem<S> res = A.r2(1) - A.mul(A.x(-1), A.x(1)) * Field<S>(S(2));
        r.expect(res.is_zero(), "r_1^2 - 2 x^-1 x^1: " + A.str(res));
    }
    return make_result("defr", A.N(), cfg(A), r, sw);
}

template <class S>
CheckResult check_center(const Algebra<S>& A) {
    Stopwatch sw;
    Residual r;
    const auto& m = A.model();
    Elem<S> r2 = radius_polynomial(A, m.n());
    for (int i : m.indices()) {
        Elem<S> c = A.comm(r2, A.x(i));
        r.expect(c.is_zero(), "[r^2, x^i] at i=" + std::to_string(i) + ": " + A.str(c));
        Elem<S> c2 = A.comm(A.r2(m.n()), A.x(i));
        r.expect(c2.is_zero(), "[r_n^2, x^i] at i=" + std::to_string(i) + ": " + A.str(c2));
    }
    return make_result("center", A.N(), cfg(A), r, sw);
}

template <class S>
CheckResult check_rutil1(const Algebra<S>& A) {
    Stopwatch sw;
    Residual r;
    const auto& m = A.model();
    using C = Field<S>;
    for (int i = A.odd() ? 1 : 2; i <= m.n(); ++i) {
        Elem<S> lower = A.r2(i - 1) * C(m.omega(i - 1).inv());
        Elem<S> a = A.r2(i) - (lower * C(m.q(-1)) + A.mul(A.x(i), A.x(-i))) * C(m.omega(i));
        r.expect(a.is_zero(), "r_i^2 - w_i(q^-1 r_{i-1}^2/w_{i-1} + x^i x^-i) at i=" + std::to_string(i) + ": " + A.str(a));
        Elem<S> b = A.r2(i) - (lower * C(m.q()) + A.mul(A.x(-i), A.x(i))) * C(m.omega(i));
        r.expect(b.is_zero(), "r_i^2 - w_i(q r_{i-1}^2/w_{i-1} + x^-i x^i) at i=" + std::to_string(i) + ": " + A.str(b));
    }
    std::string value;
    if (A.odd()) {
        // at i = 1 the identity needs omega_0 = q^{1/2} + q^{-1/2} in place of 2
        S w0 = m.s(1) + m.s(-1);
        Elem<S> alt = A.r2(1) - (A.r2(0) * C(m.q(-1) * w0.inv()) + A.mul(A.x(1), A.x(-1))) * C(m.omega(1));
        value = std::string("i=1 with omega_0 = q^1/2 + q^-1/2: ") + (alt.is_zero() ? "zero" : A.str(alt));
    }
    return make_result("rutil1", A.N(), cfg(A), r, sw, value);
}

template <class S>
CheckResult check_rutil2(const Algebra<S>& A) {
    Stopwatch sw;
    Residual r;
    const auto& m = A.model();
    using C = Field<S>;
    for (int i = 1; i <= m.n(); ++i) {
        Elem<S> res = A.mul(A.x(-i), A.x(i)) - A.mul(A.x(i), A.x(-i)) * C(m.q(2)) +
                      A.r2(i) * C(m.q() * m.k() * m.omega(i).inv());
        r.expect(res.is_zero(), "x^-i x^i - q^2 x^i x^-i + q k r_i^2/w_i at i=" + std::to_string(i) + ": " + A.str(res));
    }
    return make_result("rutil2", A.N(), cfg(A), r, sw);
}

template <class S>
CheckResult check_confluence(const Algebra<S>& A, int triples, unsigned seed) {
    Stopwatch sw;
    Residual r;
    std::mt19937 rng(seed);
    for (int t = 0; t < triples; ++t) {
        Elem<S> a = random_element(A, rng), b = random_element(A, rng), c = random_element(A, rng);
        Elem<S> res = A.mul(A.mul(a, b), c) - A.mul(a, A.mul(b, c));
        r.expect(res.is_zero(), "(ab)c - a(bc) for triple " + std::to_string(t) + ": " + A.str(res));
    }
    // the same word reduced in different orders
    WordOptions longw;
    longw.max_len = 6;
    for (int t = 0; t < triples; ++t) {
        auto w = random_word(A, rng, longw);
        Elem<S> l = word_product(A, w, Fold::left, rng);
        Elem<S> rr = word_product(A, w, Fold::right, rng);
        Elem<S> x = word_product(A, w, Fold::random, rng);
        r.expect(l == rr && l == x, "word " + std::to_string(t) + " depends on reduction order: " + A.str(l - rr));
    }
    return make_result("confluence", A.N(), cfg(A), r, sw, std::to_string(triples) + " triples");
}

template <class S>
CheckResult check_grading(const Algebra<S>& A, int words, unsigned seed) {
    Stopwatch sw;
    Residual r;
    std::mt19937 rng(seed);
    WordOptions opt;
    opt.max_len = 5;
    for (int t = 0; t < words; ++t) {
        auto w = random_word(A, rng, opt);
        Elem<S> p = word_product(A, w, Fold::left, rng);
        for (int i = 1; i <= A.n(); ++i) {
            int want = 0;
            for (const auto& [g, e] : w)
                if (A.is_x(g)) {
                    int j = A.x_index(g);
                    want += e * ((j == i) - (j == -i));
                }
            auto got = A.grading(p, i);
            r.expect(got && *got == want, "deg_" + std::to_string(i) + " of word " + std::to_string(t) + " is " +
                                              (got ? std::to_string(*got) : "mixed") + ", expected " +
                                              std::to_string(want));
        }
    }
    return make_result("grading", A.N(), cfg(A), r, sw);
}

template <class S>
CheckResult check_star_alg(const Algebra<S>& A, int pairs, unsigned seed) {
    Stopwatch sw;
    Residual r;
    std::mt19937 rng(seed);
    for (int t = 0; t < pairs; ++t) {
        Elem<S> a = random_element(A, rng), b = random_element(A, rng);
        Elem<S> res = A.star(A.mul(a, b)) - A.mul(A.star(b), A.star(a));
        r.expect(res.is_zero(), "(ab)* - b* a* for pair " + std::to_string(t) + ": " + A.str(res));
        Elem<S> inv = A.star(A.star(a)) - a;
        r.expect(inv.is_zero(), "a** - a for pair " + std::to_string(t) + ": " + A.str(inv));
    }
    Elem<S> l = A.star(A.L()) - A.L(-1);
    r.expect(l.is_zero(), "L* - L^-1: " + A.str(l));
    return make_result("star-alg", A.N(), cfg(A), r, sw);
}

template <class S>
CheckResult check_embed(const Algebra<S>& small, const Algebra<S>& big, int words, unsigned seed) {
    Stopwatch sw;
    Residual r;
    std::mt19937 rng(seed);
    auto map_slot = [&](int g) {
        if (small.is_r(g)) return big.slot_r(small.r_index(g));
        if (small.is_x(g)) return big.slot_x(small.x_index(g));
        return g;
    };
    for (int t = 0; t < words; ++t) {
        auto w = random_word(small, rng, WordOptions{true, true, 4, 1});
        auto wb = w;
        for (auto& [g, e] : wb) g = map_slot(g);
        Elem<S> a = small.embed_into(big, word_product(small, w, Fold::left, rng));
        Elem<S> b = word_product(big, wb, Fold::left, rng);
        r.expect(a == b, "embed(normalize(w)) - normalize(embed(w)) for word " + std::to_string(t) + ": " +
                             big.str(a - b));
    }
    return make_result("embed", small.N(), cfg(small), r, sw);
}

#define QE_INST(S)                                                                                 \
    template std::vector<std::pair<int, int>> random_word(const Algebra<S>&, std::mt19937&,         \
                                                          const WordOptions&);                      \
    template Elem<S> word_product(const Algebra<S>&, const std::vector<std::pair<int, int>>&, Fold, \
                                  std::mt19937&);                                                   \
    template Elem<S> random_element(const Algebra<S>&, std::mt19937&, const WordOptions&);          \
    template CheckResult check_xrel(const MatrixData<S>&, const Algebra<S>&);                       \
    template CheckResult check_explicitx(const Algebra<S>&);                                        \
    template CheckResult check_generator_rel(const Algebra<S>&);                                    \
    template CheckResult check_defr(const Algebra<S>&);                                             \
    template CheckResult check_center(const Algebra<S>&);                                           \
    template CheckResult check_rutil1(const Algebra<S>&);                                           \
    template CheckResult check_rutil2(const Algebra<S>&);                                           \
    template CheckResult check_confluence(const Algebra<S>&, int, unsigned);                        \
    template CheckResult check_grading(const Algebra<S>&, int, unsigned);                           \
    template CheckResult check_star_alg(const Algebra<S>&, int, unsigned);                          \
    template CheckResult check_embed(const Algebra<S>&, const Algebra<S>&, int, unsigned);

QE_INST(RatFunc)
QE_INST(QNum)

}  // namespace qe
