#include "qeuclid/calculus_checks.hpp"

#include <random>

#include "qeuclid/algebra_checks.hpp"

namespace qe {

namespace {

template <class S>
std::string cfg(const Calculus<S>& C) {
    return to_string(C.calc()) + " " + C.algebra().model().scalars().label();
}

}  // namespace

template <class S>
CheckResult check_dirac(const Calculus<S>& C) {
    Stopwatch sw;
    Residual r;
    const auto& A = C.algebra();
    for (int i : A.model().indices()) {
        OneForm<S> res = C.d(A.x(i)) - C.xi(i);
        r.expect(res.is_zero(), "-[theta, x^i] - xi^i at i=" + std::to_string(i) + ": " + C.str(res));
    }
    r.expect(C.d(A.one()).is_zero(), "d(1) != 0");
    return make_result("dirac", A.N(), cfg(C), r, sw);
}

template <class S>
CheckResult check_xixi(const Calculus<S>& C) {
    Stopwatch sw;
    Residual r;
    const auto& A = C.algebra();
    const auto& m = A.model();
    const auto& d = C.matrices();
    // d of x^i xi^j = q Rhat xi^k x^l gives (1 + q Rhat) xi xi = 0 (barred: q^{-1} Rhat^{-1})
    bool unb = C.calc() == Calc::unbarred;
    for (int i : m.indices())
        for (int j : m.indices()) {
            std::map<std::pair<int, int>, Elem<S>> raw;
            raw[{i, j}] += A.one();
            const auto& row = unb ? d.rhat.row(i, j) : d.rinv.row(i, j);
            S f = unb ? m.q() : m.q(-1);
            for (const auto& en : row) raw[{en.a, en.b}] += Elem<S>(Field<S>(f * en.v));
            TwoForm<S> res = C.project(raw);
            r.expect(res.is_zero(), "xi^i xi^j + S xi xi at " + std::to_string(i) + "," + std::to_string(j) + ": " +
                                        C.str(res));
            TwoForm<S> w = C.wedge(C.xi(i), C.xi(j));
            std::map<std::pair<int, int>, Elem<S>> again(w.coeffs().begin(), w.coeffs().end());
            r.expect(C.project(again) == w, "projection not idempotent at " + std::to_string(i) + "," + std::to_string(j));
        }
    return make_result("xixi", A.N(), cfg(C), r, sw);
}

template <class S>
CheckResult check_transport(const Calculus<S>& C) {
    Stopwatch sw;
    Residual r;
    const auto& A = C.algebra();
    const auto& m = A.model();
    auto apply = [&](const OneForm<S>& w, const Elem<S>& f) { return C.rmul(w, f); };
    for (int l : m.indices()) {
        OneForm<S> xl = C.xi(l);
        for (int j = 1; j <= m.n(); ++j) {
            // r_j r_j must act like the polynomial r_j^2
            Elem<S> poly;
            for (int k : m.indices())
                if (std::abs(k) <= j) poly += A.mul(A.x(k), A.x(-k)) * Field<S>(m.g(k, -k));
            OneForm<S> a = apply(apply(xl, A.r(j)), A.r(j));
            OneForm<S> b = apply(xl, poly);
            r.expect(a == b, "xi r_j r_j vs xi r_j^2 at l=" + std::to_string(l) + " j=" + std::to_string(j) + ": " +
                                 C.str(a - b));
            OneForm<S> inv = apply(apply(xl, A.r(j)), A.r(j, -1));
            r.expect(inv == xl, "xi r_j r_j^-1 at l=" + std::to_string(l) + " j=" + std::to_string(j));
        }
        int inv_slot = A.odd() ? 0 : 1;
        OneForm<S> inv = apply(apply(xl, A.x(inv_slot)), A.x(inv_slot, -1));
        r.expect(inv == xl, "xi x x^-1 at l=" + std::to_string(l));
        OneForm<S> lam = apply(xl, A.L()) - C.lmul(A.L(), xl);
        r.expect(lam.is_zero(), "xi L - L xi at l=" + std::to_string(l));
    }
    return make_result("transport", A.N(), cfg(C), r, sw);
}

template <class S>
CheckResult check_bimodule(const Calculus<S>& C, int samples, unsigned seed) {
    Stopwatch sw;
    Residual r;
    const auto& A = C.algebra();
    const auto& I = A.model().indices();
    std::mt19937 rng(seed);
    for (int t = 0; t < samples; ++t) {
        Elem<S> f = random_element(A, rng), g = random_element(A, rng);
        int l = I[static_cast<size_t>(t) % I.size()];
        OneForm<S> a = C.rmul(C.rmul(C.xi(l), f), g), b = C.rmul(C.xi(l), A.mul(f, g));
        r.expect(a == b, "(xi f) g - xi (fg) for sample " + std::to_string(t) + ": " + C.str(a - b));
    }
    return make_result("bimodule", A.N(), cfg(C), r, sw);
}

template <class S>
CheckResult check_leibniz(const Calculus<S>& C, int pairs, unsigned seed) {
    Stopwatch sw;
    Residual r;
    const auto& A = C.algebra();
    std::mt19937 rng(seed);
    WordOptions opt;
    opt.dilatator = false;
    for (int t = 0; t < pairs; ++t) {
        Elem<S> f = random_element(A, rng, opt), g = random_element(A, rng, opt);
        OneForm<S> res = C.d(A.mul(f, g)) - C.lmul(f, C.d(g)) - C.rmul(C.d(f), g);
        r.expect(res.is_zero(), "d(fg) - f dg - df g for pair " + std::to_string(t) + ": " + C.str(res));
    }
    return make_result("leibniz", A.N(), cfg(C), r, sw, std::to_string(pairs) + " pairs");
}

template <class S>
CheckResult check_star_forms(const Calculus<S>& C, const Calculus<S>& Cb) {
    Stopwatch sw;
    Residual r;
    const auto& A = C.algebra();
    const auto& m = A.model();
    OneForm<S> t = star_form(C, Cb, C.dirac()) + Cb.dirac();
    r.expect(t.is_zero(), "theta^* + thetabar: " + Cb.str(t));
    OneForm<S> tb = star_form(Cb, C, Cb.dirac()) + C.dirac();
    r.expect(tb.is_zero(), "thetabar^* + theta: " + C.str(tb));
    for (int i : m.indices()) {
        OneForm<S> s = star_form(C, Cb, C.xi(i));
        OneForm<S> want = Cb.xi(-i) * Field<S>(m.g(-i, i));
        r.expect(s == want, "(xi^i)^* - xibar^j g_ji at i=" + std::to_string(i) + ": " + Cb.str(s - want));
        OneForm<S> back = star_form(Cb, C, s);
        r.expect(back == C.xi(i), "(xi^i)^** - xi^i at i=" + std::to_string(i) + ": " + C.str(back - C.xi(i)));
    }
    return make_result("star-forms", A.N(), to_string(C.calc()) + " " + m.scalars().label(), r, sw);
}

template <class S>
CheckResult check_d_lambda(const Calculus<S>& C) {
    Stopwatch sw;
    Residual r;
    const auto& A = C.algebra();
    OneForm<S> dl = C.d(A.L());
    return make_result("d-lambda", A.N(), cfg(C), r, sw, dl.is_zero() ? "0" : C.str(dl));
}

#define QE_INST(S)                                                                            \
    template CheckResult check_dirac(const Calculus<S>&);                                     \
    template CheckResult check_xixi(const Calculus<S>&);                                      \
    template CheckResult check_transport(const Calculus<S>&);                                 \
    template CheckResult check_bimodule(const Calculus<S>&, int, unsigned);                   \
    template CheckResult check_leibniz(const Calculus<S>&, int, unsigned);                    \
    template CheckResult check_star_forms(const Calculus<S>&, const Calculus<S>&);            \
    template CheckResult check_d_lambda(const Calculus<S>&);

QE_INST(RatFunc)
QE_INST(QNum)

}  // namespace qe
