#include "qeuclid/geometry.hpp"

#include <optional>
#include <stdexcept>

#include "qeuclid/frames_checks.hpp"

namespace qe {

std::string to_string(Flip f) {
    return f == Flip::qR ? "qR" : "qR_inverse";
}

Flip adapted_flip(Calc c) {
    return c == Calc::unbarred ? Flip::qR_inverse : Flip::qR;
}

template <class S>
Tensor<S> flip_matrix(const MatrixData<S>& d, Flip f) {
    return f == Flip::qR ? d.rhat.scaled(d.model.q()) : d.rinv.scaled(d.model.q(-1));
}

namespace {

template <class S>
std::string cfg(const Geometry<S>& G) {
    return to_string(G.calculus().calc()) + " " + to_string(G.flip()) + " " +
           G.calculus().algebra().model().scalars().label();
}

template <class S>
std::string cfg(const MatrixData<S>& d, Flip f) {
    return to_string(f) + " " + d.model.scalars().label();
}

std::string idx(std::initializer_list<int> v) {
    std::string r;
    for (int i : v) r += (r.empty() ? "" : ",") + std::to_string(i);
    return r;
}

template <class S, size_t K>
TensorForm<S, K> scaled(const TensorForm<S, K>& t, const Field<S>& c) {
    TensorForm<S, K> r;
    for (const auto& [k, v] : t.coeffs()) r.add(k, v * c);
    return r;
}

}  // namespace

template <class S>
Geometry<S>::Geometry(const Calculus<S>& C, Flip f) : C_(C), f_(f), S_(flip_matrix(C.matrices(), f)) {}

template <class S>
Tensor2<S> Geometry<S>::tensor(const OneForm<S>& u, const OneForm<S>& v) const {
    const auto& A = C_.algebra();
    Tensor2<S> r;
    for (const auto& [l, ul] : u.coeffs())
        for (const auto& [m, vm] : v.coeffs())
            for (auto w = C_.rmul(C_.xi(l), vm); const auto& [p, c] : w.coeffs()) r.add({p, m}, A.mul(ul, c));
    return r;
}

template <class S>
Tensor2<S> Geometry<S>::sigma(const Tensor2<S>& t) const {
    Tensor2<S> r;
    for (const auto& [k, f] : t.coeffs())
        for (const auto& en : S_.row(k[0], k[1])) r.add({en.a, en.b}, f * Field<S>(en.v));
    return r;
}

template <class S>
Tensor2<S> Geometry<S>::pi(const Tensor2<S>& t) const {
    const auto& Pa = C_.matrices().proj.a;
    Tensor2<S> r;
    for (const auto& [k, f] : t.coeffs())
        for (const auto& en : Pa.row(k[0], k[1])) r.add({en.a, en.b}, f * Field<S>(en.v));
    return r;
}

template <class S>
Tensor3<S> Geometry<S>::pi12(const Tensor3<S>& t) const {
    const auto& Pa = C_.matrices().proj.a;
    Tensor3<S> r;
    for (const auto& [k, f] : t.coeffs())
        for (const auto& en : Pa.row(k[0], k[1])) r.add({en.a, en.b, k[2]}, f * Field<S>(en.v));
    return r;
}

template <class S>
const Tensor2<S>& Geometry<S>::Dxi(int i) const {
    std::call_once(dxi_once_, [&] {
        const OneForm<S>& th = C_.dirac();
        for (int l : C_.algebra().model().indices()) {
            Tensor2<S> t = sigma(tensor(C_.xi(l), th));
            t -= tensor(th, C_.xi(l));
            dxi_.emplace(l, std::move(t));
        }
    });
    auto it = dxi_.find(i);
    if (it == dxi_.end()) throw std::invalid_argument("xi index out of range: " + std::to_string(i));
    return it->second;
}

template <class S>
Tensor2<S> Geometry<S>::D(const OneForm<S>& w) const {
    const auto& A = C_.algebra();
    Tensor2<S> r;
    for (const auto& [l, f] : w.coeffs()) {
        for (auto df = C_.d(f); const auto& [a, c] : df.coeffs()) r.add({a, l}, c);
        for (const auto& [k, v] : Dxi(l).coeffs()) r.add(k, A.mul(f, v));
    }
    return r;
}

template <class S>
Tensor3<S> Geometry<S>::D2(const Tensor2<S>& t) const {
    const auto& A = C_.algebra();
    Tensor3<S> r;
    for (const auto& [lm, f] : t.coeffs()) {
        int l = lm[0], m = lm[1];
        for (auto df = C_.d(f); const auto& [a, c] : df.coeffs()) r.add({a, l, m}, c);
        for (const auto& [ab, v] : Dxi(l).coeffs()) r.add({ab[0], ab[1], m}, A.mul(f, v));
        // sigma_12 (xi^l (x) D xi^m)
        for (const auto& [ab, v] : Dxi(m).coeffs())
            for (auto w = C_.rmul(C_.xi(l), v); const auto& [p, c] : w.coeffs()) {
                Elem<S> fc = A.mul(f, c);
                for (const auto& en : S_.row(p, ab[0])) r.add({en.a, en.b, ab[1]}, fc * Field<S>(en.v));
            }
    }
    return r;
}

template <class S>
Elem<S> Geometry<S>::metric(const OneForm<S>& u, const OneForm<S>& v) const {
    const auto& A = C_.algebra();
    const auto& m = A.model();
    const Frame<S>& F = C_.reference_frame();
    auto to_frame = [&](const OneForm<S>& w) {
        std::map<int, Elem<S>> r;
        for (const auto& [l, c] : w.coeffs())
            for (int a : m.indices()) {
                const Elem<S>& e = F.E(l, a);
                if (!e.is_zero()) r[a] += A.mul(c, e);
            }
        return r;
    };
    auto U = to_frame(u), V = to_frame(v);
    Elem<S> g;
    for (const auto& [a, Ua] : U) {
        OneForm<S> th = frame_form(F, a);
        for (const auto& [b, Vb] : V) {
            // theta^a V_b = W_{abc} theta^c; only c = -b meets g^{cb}
            Elem<S> w;
            for (auto tv = C_.rmul(th, Vb); const auto& [l, c] : tv.coeffs()) {
                const Elem<S>& e = F.E(l, -b);
                if (!e.is_zero()) w += A.mul(c, e);
            }
            g += A.mul(Ua, w) * Field<S>(m.g(-b, b));
        }
    }
    return g;
}

template <class S>
std::string Geometry<S>::str(const Tensor2<S>& t) const {
    if (t.is_zero()) return "0";
    std::string name = C_.calc() == Calc::unbarred ? "xi" : "bxi";
    std::string r;
    for (const auto& [k, v] : t.coeffs()) {
        if (!r.empty()) r += " + ";
        r += "(" + C_.algebra().str(v) + ")*" + name + "{" + std::to_string(k[0]) + "}(x)" + name + "{" +
             std::to_string(k[1]) + "}";
    }
    return r;
}

template <class S>
std::string Geometry<S>::str(const Tensor3<S>& t) const {
    if (t.is_zero()) return "0";
    std::string name = C_.calc() == Calc::unbarred ? "xi" : "bxi";
    std::string r;
    for (const auto& [k, v] : t.coeffs()) {
        if (!r.empty()) r += " + ";
        r += "(" + C_.algebra().str(v) + ")*" + name + "{" + std::to_string(k[0]) + "}" + name + "{" +
             std::to_string(k[1]) + "}(x)" + name + "{" + std::to_string(k[2]) + "}";
    }
    return r;
}

// ---- matrix-level checks ----

template <class S>
CheckResult check_sigma_braid(const MatrixData<S>& d, Flip f) {
    Stopwatch sw;
    Residual r;
    Tensor<S> St = flip_matrix(d, f);
    auto res = braid_residual(St);
    r.expect(res.empty(), "S12 S23 S12 - S23 S12 S23: " + std::to_string(res.size()) + " nonzero entries");
    return make_result("sigma-braid", d.model.N(), cfg(d, f), r, sw);
}

template <class S>
CheckResult check_sigma_pi(const MatrixData<S>& d, Flip f) {
    Stopwatch sw;
    Residual r;
    Tensor<S> St = flip_matrix(d, f);
    Tensor<S> S1 = St + Tensor<S>::identity(d.model);
    const Tensor<S>& Pa = d.proj.a;
    Tensor<S> left = Pa * S1, right = S1 * Pa;
    r.expect(left.is_zero(), "P_a (S + 1) = " + left.str());
    r.expect(right.is_zero(), "(S + 1) P_a = " + right.str());
    auto chain = chain_residual<S>({{&St, true}, {&St, false}, {&Pa, true}}, {{&Pa, false}, {&St, true}, {&St, false}});
    r.expect(chain.empty(), "S12 S23 P_a12 - P_a23 S12 S23: " + std::to_string(chain.size()) + " nonzero entries");
    return make_result("sigma-pi", d.model.N(), cfg(d, f), r, sw);
}

template <class S>
CheckResult check_metric_compat(const MatrixData<S>& d, Flip f) {
    Stopwatch sw;
    Residual r;
    const auto& m = d.model;
    Tensor<S> St = flip_matrix(d, f);
    // L^{ab}_{cd} = S^{ae}_{df} g^{fg} S^{cb}_{eg}, keyed (a, b, c, d)
    std::map<std::array<int, 4>, S> L;
    for (const auto& [k, v1] : St.entries()) {
        int a = k[0], e = k[1], dd = k[2], ff = k[3];
        S gv = v1 * m.g(ff, -ff);
        for (const auto& en : St.col(e, -ff)) {
            auto [it, inserted] = L.emplace(std::array<int, 4>{a, en.b, en.a, dd}, gv * en.v);
            if (!inserted) it->second += gv * en.v;
        }
    }
    S want = f == Flip::qR ? m.q(2) : m.q(-2);
    std::optional<S> c;
    for (int a : m.indices())
        for (int b : m.indices())
            for (int cc : m.indices())
                for (int dd : m.indices()) {
                    auto it = L.find({a, b, cc, dd});
                    S lhs = it == L.end() ? S(0) : it->second;
                    S base = b == dd ? m.g(a, cc) : S(0);
                    if (base.is_zero()) {
                        r.expect(lhs.is_zero(), "not proportional at " + idx({a, b, cc, dd}) + ": " + lhs.str());
                        continue;
                    }
                    S ratio = lhs * base.inv();
                    if (!c) c = ratio;
                    r.expect(ratio == *c, "factor differs at " + idx({a, b, cc, dd}) + ": " + ratio.str());
                }
    std::string value = c ? c->str() : "none";
    r.expect(c && *c == want, "factor " + value + ", expected " + want.str());
    return make_result("metric-compat", m.N(), cfg(d, f), r, sw, value);
}

// ---- calculus-level checks ----

template <class S>
CheckResult check_dxi(const Geometry<S>& G) {
    Stopwatch sw;
    Residual r;
    const auto& C = G.calculus();
    const auto& A = C.algebra();
    const auto& m = A.model();
    const bool unb = C.calc() == Calc::unbarred;
    const int N = m.N(), n = m.n();
    std::string value;
    if (G.flip() == adapted_flip(C.calc())) {
        for (int i : m.indices()) r.expect(G.Dxi(i).is_zero(), "D xi^" + std::to_string(i) + " = " + G.str(G.Dxi(i)));
        value = "D xi = 0";
    } else {
        // (q^{+-2} - 1)(theta (x) xi^i + xi^i (x) theta) + c r_n^{-2} x^i g_{lm} xi^l (x) xi^m
        Field<S> f(unb ? m.q(2) - S(1) : m.q(-2) - S(1));
        S c = unb ? -(m.q(3) * m.s(-N) * m.omega(n)) : -(m.q(-3) * m.s(N) * m.omega(n));
        const OneForm<S>& th = C.dirac();
        for (int i : m.indices()) {
            Tensor2<S> closed = G.tensor(th, C.xi(i));
            closed += G.tensor(C.xi(i), th);
            closed = scaled(closed, f);
            Elem<S> base = A.mul(A.r(n, -2), A.x(i));
            for (int l : m.indices()) closed.add({l, -l}, base * Field<S>(c * m.g(l, -l)));
            Tensor2<S> res = G.Dxi(i) - closed;
            r.expect(res.is_zero(), "D xi^" + std::to_string(i) + " - closed form = " + G.str(res));
        }
        value = "closed form, c = " + c.str();
    }
    return make_result("dxi", N, cfg(G), r, sw, value);
}

template <class S>
CheckResult check_torsion(const Geometry<S>& G) {
    Stopwatch sw;
    Residual r;
    for (int i : G.calculus().algebra().model().indices()) {
        Tensor2<S> t = G.pi(G.Dxi(i));
        r.expect(t.is_zero(), "pi D xi^" + std::to_string(i) + " = " + G.str(t));
    }
    return make_result("torsion", G.calculus().algebra().N(), cfg(G), r, sw);
}

template <class S>
CheckResult check_curvature(const Geometry<S>& G) {
    Stopwatch sw;
    Residual r;
    for (int i : G.calculus().algebra().model().indices()) {
        Tensor3<S> t = G.curvature(i);
        r.expect(t.is_zero(), "Curv(xi^" + std::to_string(i) + ") = " + G.str(t));
    }
    return make_result("curvature", G.calculus().algebra().N(), cfg(G), r, sw);
}

template <class S>
CheckResult check_metric_xi(const Geometry<S>& G) {
    Stopwatch sw;
    Residual r;
    const auto& C = G.calculus();
    const auto& A = C.algebra();
    const auto& m = A.model();
    Elem<S> L2 = A.L(C.calc() == Calc::unbarred ? 2 : -2);
    for (int i : m.indices())
        for (int j : m.indices()) {
            Elem<S> res = G.metric(C.xi(i), C.xi(j)) - L2 * Field<S>(m.g(i, j));
            r.expect(res.is_zero(), "g(xi^" + idx({i}) + " (x) xi^" + idx({j}) + ") - g^ij Lambda^+-2 = " + A.str(res));
        }
    return make_result("metric-xi", A.N(), cfg(G), r, sw);
}

template <class S>
CheckResult check_reality(const Geometry<S>& G, const Geometry<S>& Gb) {
    Stopwatch sw;
    Residual r;
    if (G.flip() != Gb.flip() || G.calculus().calc() == Gb.calculus().calc())
        throw std::invalid_argument("reality needs both calculi with the same flip");
    const auto& A = G.calculus().algebra();
    const auto& m = A.model();
    std::optional<Field<S>> ratio;
    bool proportional = true;
    for (const Geometry<S>* from : {&G, &Gb}) {
        const Geometry<S>& to = from == &G ? Gb : G;
        const auto& Cf = from->calculus();
        const auto& Ct = to.calculus();
        std::map<std::pair<int, int>, Elem<S>> gt;
        for (int l : m.indices())
            for (int k : m.indices()) gt[{l, k}] = to.metric(Ct.xi(l), Ct.xi(k));
        for (int i : m.indices())
            for (int j : m.indices()) {
                Elem<S> rhs = A.star(from->metric(Cf.xi(i), Cf.xi(j)));
                Tensor2<S> t = to.sigma(to.tensor(star_form(Cf, Ct, Cf.xi(j)), star_form(Cf, Ct, Cf.xi(i))));
                Elem<S> lhs;
                for (const auto& [k, c] : t.coeffs()) lhs += A.mul(c, gt[{k[0], k[1]}]);
                std::string where = to_string(Cf.calc()) + " (" + idx({i, j}) + ")";
                r.expect(lhs == rhs, "g sigma(eta* (x) xi*) - g(xi (x) eta)* at " + where + " = " + A.str(lhs - rhs));
                if (rhs.is_zero() || lhs.is_zero()) {
                    proportional = proportional && lhs.is_zero() == rhs.is_zero();
                    continue;
                }
                const auto& [mono, rc] = *rhs.terms().begin();
                Field<S> c = lhs.coeff(mono) / rc;
                if (!ratio) ratio = c;
                proportional = proportional && c == *ratio && lhs == rhs * c;
            }
    }
    std::string value = proportional && ratio ? "lhs = (" + ratio->str() + ") rhs" : "not proportional";
    return make_result("reality", m.N(), cfg(G), r, sw, value);
}

namespace {

// q = 1 and Lambda = K = 1 on one element; throws on a pole or a leftover radical.
std::map<Mono, mpq_class> classical(const Algebra<RatFunc>& A, const Elem<RatFunc>& v) {
    std::map<Mono, mpq_class> out;
    for (const auto& [mono, c] : v.terms()) {
        Mono mm = mono;
        mm.e[A.slot_L()] = 0;
        mm.e[A.slot_K()] = 0;
        if (!c.is_scalar()) throw std::domain_error("radical coefficient " + c.str());
        out[mm] += c.scalar().eval(mpq_class(1));
    }
    for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

std::string classical_str(const Algebra<RatFunc>& A, const std::map<Mono, mpq_class>& v) {
    if (v.empty()) return "0";
    std::string r;
    for (const auto& [mono, c] : v) {
        if (!r.empty()) r += " + ";
        r += c.get_str() + (mono.is_one() ? "" : " " + A.mono_str(mono));
    }
    return r;
}

}  // namespace

CheckResult check_classical_limit(const Geometry<RatFunc>& G) {
    Stopwatch sw;
    Residual r;
    const auto& C = G.calculus();
    const auto& A = C.algebra();
    const auto& m = A.model();
    for (int i : m.indices())
        for (int j : m.indices()) {
            std::string where = "g(xi^" + idx({i}) + " (x) xi^" + idx({j}) + ")";
            try {
                auto v = classical(A, G.metric(C.xi(i), C.xi(j)));
                bool ok = i == -j ? v.size() == 1 && v.begin()->first.is_one() && v.begin()->second == 1 : v.empty();
                r.expect(ok, where + " -> " + classical_str(A, v));
            } catch (const std::exception& e) {
                r.fail(where + ": " + e.what());
            }
        }
    // D xi limit: asserted zero only for the flip adapted to the calculus
    std::string value;
    for (int i : m.indices()) {
        std::string where = "D xi^" + std::to_string(i);
        try {
            std::string lim;
            for (const auto& [k, v] : G.Dxi(i).coeffs()) {
                auto c = classical(A, v);
                if (c.empty()) continue;
                if (!lim.empty()) lim += " + ";
                lim += "(" + classical_str(A, c) + ")(" + idx({k[0], k[1]}) + ")";
            }
            if (G.flip() == adapted_flip(C.calc())) r.expect(lim.empty(), where + " -> " + lim);
            if (value.empty() && !lim.empty()) value = where + " -> " + lim;
        } catch (const std::exception& e) {
            r.fail(where + ": " + e.what());
        }
    }
    if (value.empty()) value = "D xi -> 0";
    return make_result("classical-limit", m.N(), cfg(G), r, sw, value);
}

#define QE_INST(S)                                                                   \
    template Tensor<S> flip_matrix(const MatrixData<S>&, Flip);                      \
    template class Geometry<S>;                                                      \
    template CheckResult check_sigma_braid(const MatrixData<S>&, Flip);              \
    template CheckResult check_sigma_pi(const MatrixData<S>&, Flip);                 \
    template CheckResult check_metric_compat(const MatrixData<S>&, Flip);            \
    template CheckResult check_dxi(const Geometry<S>&);                              \
    template CheckResult check_torsion(const Geometry<S>&);                          \
    template CheckResult check_curvature(const Geometry<S>&);                        \
    template CheckResult check_metric_xi(const Geometry<S>&);                        \
    template CheckResult check_reality(const Geometry<S>&, const Geometry<S>&);

QE_INST(RatFunc)
QE_INST(QNum)

}  // namespace qe
