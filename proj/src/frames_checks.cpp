#include "qeuclid/frames_checks.hpp"

#include <random>

#include "qeuclid/algebra_checks.hpp"

namespace qe {

namespace {

template <class S>
std::string cfg(const Algebra<S>& A, const Frame<S>& F) {
    return to_string(F.calc) + " " + to_string(F.mode) + " " + A.model().scalars().label();
}

std::string idx(std::initializer_list<int> v) {
    std::string r = "(";
    for (int i : v) r += (r.size() > 1 ? "," : "") + std::to_string(i);
    return r + ")";
}

template <class S>
Field<S> F_(const S& v) {
    return Field<S>(v);
}

// Pairwise products e^k_a e^l_b, computed on demand.
template <class S>
class EProducts {
public:
    EProducts(const Algebra<S>& A, const Frame<S>& F) : A_(A), F_(F) {}
    const Elem<S>& get(int k, int a, int l, int b) {
        auto key = std::array<int, 4>{k, a, l, b};
        auto it = c_.find(key);
        if (it != c_.end()) return it->second;
        return c_.emplace(key, A_.mul(F_.E(k, a), F_.E(l, b))).first->second;
    }

private:
    const Algebra<S>& A_;
    const Frame<S>& F_;
    std::map<std::array<int, 4>, Elem<S>> c_;
};

}  // namespace

template <class S>
FramePair<S> make_frame_pair(const Algebra<S>& A, RadMode mode) {
    FramePair<S> P;
    P.G = make_gammas(A.model(), mode);
    P.F = build_frame(A, Calc::unbarred, P.G.g);
    P.Fb = build_frame(A, Calc::barred, P.G.gb);
    P.F.mode = P.Fb.mode = mode;
    return P;
}

template <class S>
std::map<std::pair<int, int>, Elem<S>> phi_L(const Algebra<S>& A, const Frame<S>& F) {
    const auto& m = A.model();
    Elem<S> L = A.L(F.calc == Calc::unbarred ? -1 : 1);
    std::map<std::pair<int, int>, Elem<S>> r;
    for (int i : m.indices())
        for (int j : m.indices()) {
            const Elem<S>& e = F.E(-j, -i);
            if (e.is_zero()) continue;
            r[{i, j}] = A.mul(L, e) * F_(m.g(i, -i) * m.g(-j, j));
        }
    return r;
}

template <class S>
OneForm<S> frame_form(const Frame<S>& F, int a) {
    OneForm<S> w(F.calc);
    for (const auto& [al, v] : F.theta)
        if (al.first == a) w.add(al.second, v);
    return w;
}

template <class S>
CheckResult check_e_table(const Algebra<S>& A, const Frame<S>& F, const std::map<int, Field<S>>& gamma) {
    Stopwatch sw;
    Residual r;
    const auto& m = A.model();
    const bool bar = F.calc == Calc::barred;
    const S q = m.q(), qi = m.q(-1), k = m.k(), h = m.h();
    const Elem<S> L = A.L(bar ? -1 : 1);
    std::string actual;
    auto lam_x = [&](int a, int i) { return A.mul(F.lambda.at(a), A.x(i)); };
    for (int i : m.indices())
        for (int a : m.indices()) {
            Elem<S> want;
            const Field<S>& g = gamma.at(a);
            const int b = std::abs(a);
            if (!bar ? i < a : i > a) {
                // zero
            } else if (i != a) {
                want = lam_x(a, i) * F_(bar ? qi * k : -(q * k));
            } else if (a == 0) {
                want = L * g * F_(bar ? m.s(-1) * h : -(m.s(1) * h));
            } else if (b == 1 && !m.odd()) {
                want = lam_x(a, a) * F_(bar ? qi * k : -(q * k));
            } else if (a == 1) {
                want = bar ? A.mul(A.mul(L, A.r(1, -1)), A.x(0)) * g * F_(-h)
                           : A.mul(A.mul(L, A.x(0, -1)), A.r(1)) * g * F_(-(q * h));
            } else if (a == -1) {
                want = bar ? A.mul(A.mul(L, A.r(1)), A.x(0, -1)) * g * F_(h * qi)
                           : A.mul(A.mul(L, A.r(1, -1)), A.x(0)) * g * F_(h);
            } else if (a > 1) {
                want = bar ? A.mul(A.mul(L, A.r(a, -1)), A.r(a - 1)) * g * F_(-(k * m.omega(a - 1).inv()))
                           : A.mul(A.mul(L, A.r(a - 1, -1)), A.r(a)) * g * F_(-(q * k * m.omega(a).inv()));
            } else {
                want = bar ? A.mul(A.mul(L, A.r(b - 1, -1)), A.r(b)) * g * F_(k * qi * m.omega(b).inv())
                           : A.mul(A.mul(L, A.r(b, -1)), A.r(b - 1)) * g * F_(k * m.omega(b - 1).inv());
            }
            Elem<S> res = F.E(i, a) - want;
            r.expect(res.is_zero(), "e" + idx({i, a}) + " - table: " + A.str(res));
            if (!res.is_zero()) actual += (actual.empty() ? "" : "; ") + ("e" + idx({i, a}) + " = " + A.str(F.E(i, a)));
        }
    return make_result("e-table", A.N(), cfg(A, F), r, sw, actual);
}

template <class S>
CheckResult check_xlambda(const Algebra<S>& A, const MatrixData<S>& d, const Frame<S>& F) {
    Stopwatch sw;
    Residual r;
    const auto& m = A.model();
    const bool bar = F.calc == Calc::barred;
    const auto& T = bar ? d.rinv : d.rhat;
    const Field<S> f = F_(bar ? m.q(-1) : m.q());
    for (int a : m.indices())
        for (int h : m.indices())
            for (int i : m.indices()) {
                Elem<S> res = A.mul(A.x(h), F.E(i, a));
                for (const auto& en : T.row(h, i)) {
                    const Elem<S>& e = F.E(en.a, a);
                    if (!e.is_zero()) res -= A.mul(e, A.x(en.b)) * (f * F_(en.v));
                }
                r.expect(res.is_zero(), "h,i,a=" + idx({h, i, a}) + ": " + A.str(res));
            }
    return make_result("xlambda", A.N(), cfg(A, F), r, sw);
}

template <class S>
CheckResult check_lambdax(const Algebra<S>& A, const MatrixData<S>& d, const Frame<S>& F) {
    Stopwatch sw;
    Residual r;
    const auto& m = A.model();
    const bool bar = F.calc == Calc::barred;
    const auto& T = bar ? d.rhat : d.rinv;
    const Field<S> f = F_(bar ? m.q() : m.q(-1));
    for (int a : m.indices())
        for (int b : m.indices())
            for (int i : m.indices()) {
                Elem<S> res = A.mul(F.lambda.at(a), F.E(i, b));
                for (const auto& en : T.col(a, b)) {
                    const Elem<S>& e = F.E(i, en.a);
                    if (!e.is_zero()) res -= A.mul(e, F.lambda.at(en.b)) * (f * F_(en.v));
                }
                r.expect(res.is_zero(), "a,b,i=" + idx({a, b, i}) + ": " + A.str(res));
            }
    return make_result("lambdax", A.N(), cfg(A, F), r, sw);
}

template <class S>
CheckResult check_rll(const Algebra<S>& A, const MatrixData<S>& d, const Frame<S>& F) {
    Stopwatch sw;
    Residual r;
    const auto& m = A.model();
    EProducts<S> E(A, F);
    for (int i : m.indices())
        for (int j : m.indices())
            for (int a : m.indices())
                for (int b : m.indices()) {
                    Elem<S> res;
                    for (const auto& en : d.rhat.row(i, j)) res += E.get(en.a, a, en.b, b) * F_(en.v);
                    for (const auto& en : d.rhat.col(a, b)) res -= E.get(i, en.a, j, en.b) * F_(en.v);
                    r.expect(res.is_zero(), "i,j,a,b=" + idx({i, j, a, b}) + ": " + A.str(res));
                }
    return make_result("rll", A.N(), cfg(A, F), r, sw);
}

template <class S>
CheckResult check_gll(const Algebra<S>& A, const Frame<S>& F) {
    Stopwatch sw;
    Residual r;
    const auto& m = A.model();
    const Elem<S> L2 = A.L(F.calc == Calc::unbarred ? 2 : -2);
    EProducts<S> E(A, F);
    for (int i : m.indices())
        for (int j : m.indices()) {
            Elem<S> res, res2;
            for (int a : m.indices()) {
                res += E.get(i, a, j, -a) * F_(m.g(a, -a));
                res2 += E.get(a, i, -a, j) * F_(m.g(a, -a));
            }
            if (i == -j) {
                res -= L2 * F_(m.g(i, j));
                res2 -= L2 * F_(m.g(i, j));
            }
            r.expect(res.is_zero(), "g^ab e^i_a e^j_b at " + idx({i, j}) + ": " + A.str(res));
            r.expect(res2.is_zero(), "g_ij e^i_a e^j_b at " + idx({i, j}) + ": " + A.str(res2));
        }
    return make_result("gll", A.N(), cfg(A, F), r, sw);
}

namespace {

template <class S>
Elem<S> s2(const Algebra<S>& A, const Frame<S>& F, int a) {
    const auto& m = A.model();
    Elem<S> acc;
    for (int c : m.indices())
        if (std::abs(c) <= a) acc += A.mul(F.lambda.at(c), F.lambda.at(-c)) * F_(m.g(c, -c));
    return acc;
}

}  // namespace

template <class S>
CheckResult check_lambda_rel(const Algebra<S>& A, const MatrixData<S>& d, const Frame<S>& F) {
    Stopwatch sw;
    Residual r;
    const auto& m = A.model();
    const auto& I = m.indices();
    std::map<std::pair<int, int>, Elem<S>> ll;
    for (int a : I)
        for (int b : I) ll[{a, b}] = A.mul(F.lambda.at(a), F.lambda.at(b));
    for (int c : I)
        for (int dd : I) {
            Elem<S> res;
            for (const auto& en : d.proj.a.col(c, dd)) res += ll[{en.a, en.b}] * F_(en.v);
            r.expect(res.is_zero(), "P_a lambda lambda at " + idx({c, dd}) + ": " + A.str(res));
        }
    for (int a : I)
        for (int b : I) {
            if (a >= b || a == -b) continue;
            Elem<S> res = ll[{a, b}] - ll[{b, a}] * F_(m.q());
            r.expect(res.is_zero(), "lambda_a lambda_b - q lambda_b lambda_a at " + idx({a, b}) + ": " + A.str(res));
        }
    for (int a = 1; a <= m.n(); ++a) {
        Elem<S> c = ll[{a, -a}] - ll[{-a, a}], want;
        if (a > 1) want = s2(A, F, a - 1) * F_(m.k() * m.omega(a - 1).inv());
        else if (m.odd()) want = s2(A, F, 0) * F_(m.h());
        Elem<S> res = c - want;
        r.expect(res.is_zero(), "[lambda_a, lambda_-a] at a=" + std::to_string(a) + ": " + A.str(res));
    }
    return make_result("lambda-rel", A.N(), cfg(A, F), r, sw);
}

template <class S>
CheckResult check_s2(const Algebra<S>& A, const Frame<S>& F) {
    Stopwatch sw;
    Residual r;
    const auto& m = A.model();
    const bool bar = F.calc == Calc::barred;
    // unbarred q^{-2} Lambda^2, barred q^2 Lambda^{-2}
    const Elem<S> L2 = A.L(bar ? -2 : 2) * F_(m.q(bar ? 2 : -2));
    const S k2i = (m.k() * m.k()).inv();
    if (m.odd()) {
        Elem<S> res = s2(A, F, 0) - A.mul(L2, A.x(0, -2)) * F_((m.h() * m.h()).inv());
        r.expect(res.is_zero(), "s^2_0: " + A.str(res));
    }
    for (int a = 1; a <= m.n(); ++a) {
        Elem<S> res = s2(A, F, a) - A.mul(L2, A.r(a, -2)) * F_(m.omega(a) * m.omega(a) * k2i);
        r.expect(res.is_zero(), "s^2_" + std::to_string(a) + ": " + A.str(res));
    }
    return make_result("s2", A.N(), cfg(A, F), r, sw);
}

template <class S>
CheckResult check_lambda_comm(const Algebra<S>& A, const Frame<S>& F) {
    Stopwatch sw;
    Residual r;
    const auto& m = A.model();
    for (int a : m.indices()) {
        const Elem<S>& l = F.lambda.at(a);
        for (int i = m.odd() ? 0 : 1; i <= m.n(); ++i) {
            Elem<S> ri = A.r(i);
            int e = a < -i ? 2 : (std::abs(a) <= i ? 1 : 0);
            if (F.calc == Calc::barred) e -= 2;  // Lambda^{-1} instead of Lambda
            Elem<S> res = A.mul(ri, l) - A.mul(l, ri) * F_(m.q(e));
            r.expect(res.is_zero(), "r_i lambda_a at " + idx({i, a}) + ": " + A.str(res));
        }
        Elem<S> res = A.mul(l, A.L()) - A.mul(A.L(), l) * F_(m.q(-1));
        r.expect(res.is_zero(), "lambda_a Lambda at a=" + std::to_string(a) + ": " + A.str(res));
        if (!m.odd()) {
            int e = a == 1 ? -1 : (a == -1 ? 1 : 0);
            Elem<S> rk = A.mul(A.K(), l) - A.mul(l, A.K()) * F_(m.q(e));
            r.expect(rk.is_zero(), "K lambda_a at a=" + std::to_string(a) + ": " + A.str(rk));
        }
    }
    return make_result("lambda-comm", A.N(), cfg(A, F), r, sw);
}

template <class S>
CheckResult check_phi_L(const Algebra<S>& A, const MatrixData<S>& d, const Frame<S>& F) {
    Stopwatch sw;
    Residual r;
    const auto& m = A.model();
    const auto& I = m.indices();
    const bool bar = F.calc == Calc::barred;
    auto L = phi_L(A, F);
    auto at = [&](int i, int j) -> const Elem<S>& {
        static const Elem<S> zero;
        auto it = L.find({i, j});
        return it == L.end() ? zero : it->second;
    };
    for (int i : I)
        for (int j : I)
            if (bar ? i > j : i < j) r.expect(at(i, j).is_zero(), "triangularity at " + idx({i, j}));
    Elem<S> prod = A.one();
    for (int i : I) prod = A.mul(prod, at(i, i));
    r.expect((prod - A.one()).is_zero(), "product of diagonal entries: " + A.str(prod));
    if (m.odd()) r.expect((at(0, 0) - A.one()).is_zero(), "phi(L)^0_0 = " + A.str(at(0, 0)));
    // L^i_j L^h_k g^{kj} = g^{hi} and L^j_i L^k_h g_{kj} = g_{hi}
    for (int i : I)
        for (int h : I) {
            Elem<S> a, b;
            for (int k : I) {
                a += A.mul(at(i, -k), at(h, k)) * F_(m.g(k, -k));
                b += A.mul(at(-k, i), at(k, h)) * F_(m.g(k, -k));
            }
            if (h == -i) {
                a -= A.one() * F_(m.g(h, i));
                b -= A.one() * F_(m.g(h, i));
            }
            r.expect(a.is_zero(), "LLg (upper) at " + idx({i, h}) + ": " + A.str(a));
            r.expect(b.is_zero(), "LLg (lower) at " + idx({i, h}) + ": " + A.str(b));
        }
    // Rhat^{ab}_{cd} L^d_f L^c_e = L^b_c L^a_d Rhat^{dc}_{ef}
    std::map<std::array<int, 4>, Elem<S>> pp;
    auto LL = [&](int i, int j, int k, int l) -> const Elem<S>& {
        auto key = std::array<int, 4>{i, j, k, l};
        auto it = pp.find(key);
        if (it != pp.end()) return it->second;
        return pp.emplace(key, A.mul(at(i, j), at(k, l))).first->second;
    };
    for (int a : I)
        for (int b : I)
            for (int e : I)
                for (int f : I) {
                    Elem<S> res;
                    for (const auto& en : d.rhat.row(a, b)) res += LL(en.b, f, en.a, e) * F_(en.v);
                    for (const auto& en : d.rhat.col(e, f)) res -= LL(b, en.b, a, en.a) * F_(en.v);
                    r.expect(res.is_zero(), "LL relation at a,b,e,f=" + idx({a, b, e, f}) + ": " + A.str(res));
                }
    return make_result("phi-L", A.N(), cfg(A, F), r, sw);
}

namespace {

// Rhat^{cd}_{ab} ebar^i_c e^j_d - Rhat^{ij}_{kl} e^k_a ebar^l_b
template <class S>
Elem<S> mixed_rll(const Algebra<S>& A, const MatrixData<S>& d, const Frame<S>& F, const Frame<S>& Fb, int i, int j,
                  int a, int b) {
    Elem<S> res;
    for (const auto& en : d.rhat.col(a, b)) {
        const Elem<S>& x = Fb.E(i, en.a);
        const Elem<S>& y = F.E(j, en.b);
        if (!x.is_zero() && !y.is_zero()) res += A.mul(x, y) * Field<S>(en.v);
    }
    for (const auto& en : d.rhat.row(i, j)) {
        const Elem<S>& x = F.E(en.a, a);
        const Elem<S>& y = Fb.E(en.b, b);
        if (!x.is_zero() && !y.is_zero()) res -= A.mul(x, y) * Field<S>(en.v);
    }
    return res;
}

}  // namespace

template <class S>
CheckResult check_theorem3(const Algebra<S>& A, const MatrixData<S>& d, const FramePair<S>& P) {
    Stopwatch sw;
    Residual r;
    const auto& m = A.model();
    const auto& I = m.indices();
    if (!m.odd() || P.G.mode != RadMode::theorem3)
        throw std::invalid_argument("theorem3 check needs N odd and theorem3 radical mode");
    for (int i : I)
        for (int j : I)
            for (int a : I)
                for (int b : I) {
                    Elem<S> res = mixed_rll(A, d, P.F, P.Fb, i, j, a, b);
                    r.expect(res.is_zero(), "mixed RLL at i,j,a,b=" + idx({i, j, a, b}) + ": " + A.str(res));
                }
    auto Lm = phi_L(A, P.F), Lp = phi_L(A, P.Fb);
    for (int i : I) {
        Elem<S> res = A.mul(Lp.at({i, i}), Lm.at({i, i})) - A.one();
        r.expect(res.is_zero(), "L^+_ii L^-_ii - 1 at i=" + std::to_string(i) + ": " + A.str(res));
    }
    // L^+ L^- cross relation in L form
    for (int a : I)
        for (int b : I)
            for (int e : I)
                for (int f : I) {
                    Elem<S> res;
                    auto get = [](const auto& M, int x, int y) -> const Elem<S>* {
                        auto it = M.find({x, y});
                        return it == M.end() ? nullptr : &it->second;
                    };
                    for (const auto& en : d.rhat.row(a, b)) {
                        auto x = get(Lp, en.b, f), y = get(Lm, en.a, e);
                        if (x && y) res += A.mul(*x, *y) * F_(en.v);
                    }
                    for (const auto& en : d.rhat.col(e, f)) {
                        auto x = get(Lm, b, en.b), y = get(Lp, a, en.a);
                        if (x && y) res -= A.mul(*x, *y) * F_(en.v);
                    }
                    r.expect(res.is_zero(), "L+L- relation at " + idx({a, b, e, f}) + ": " + A.str(res));
                }
    // gammabar_a gamma_a table
    const S q = m.q(), k2i = (m.k() * m.k()).inv(), h2i = (m.h() * m.h()).inv();
    for (int a : I) {
        int b = std::abs(a);
        S want = a == 0 ? -h2i
                 : a == 1 ? h2i * m.q(-1)
                 : a == -1 ? h2i * q
                 : k2i * m.omega(b) * m.omega(b - 1) * (a > 0 ? m.q(-1) : q);
        Field<S> res = P.G.gb.at(a) * P.G.g.at(a) - F_(want);
        r.expect(res.is_zero(), "gammabar_a gamma_a at a=" + std::to_string(a) + ": " + res.str());
    }
    return make_result("theorem3", A.N(), "theorem3 " + m.scalars().label(), r, sw);
}

template <class S>
CheckResult check_even_obstruction(const Algebra<S>& A, const MatrixData<S>& d, const FramePair<S>& P) {
    Stopwatch sw;
    Residual r;
    const auto& m = A.model();
    if (m.odd()) throw std::invalid_argument("even-obstruction needs N even");
    Elem<S> res = -mixed_rll(A, d, P.F, P.Fb, 1, 2, 1, 2);
    r.expect(!res.is_zero(), "mixed RLL at (1,2,1,2) vanishes");
    // k^3 q gammabar_1 gamma_2 omega_2^{-1} r_2 r_1^{-1} K
    const S k = m.k();
    Elem<S> closed = A.mul(A.mul(A.r(1, -1), A.r(2)), A.K()) * (P.G.gb.at(1) * P.G.g.at(2)) *
                     F_(k * k * k * m.q() * m.omega(2).inv());
    bool match = (res - closed).is_zero();
    if (m.N() == 4) r.expect(match, "residual differs from the closed form: " + A.str(res - closed));
    return make_result("even-obstruction", A.N(), to_string(P.G.mode) + " " + m.scalars().label(), r, sw,
                       A.str(res) + (match ? " (closed form)" : ""));
}

template <class S>
CheckResult check_frame_commute(const Calculus<S>& C, const Frame<S>& F) {
    Stopwatch sw;
    Residual r;
    const auto& A = C.algebra();
    const auto& m = A.model();
    std::vector<std::pair<std::string, Elem<S>>> gens;
    for (int i : m.indices()) gens.emplace_back("x" + std::to_string(i), A.x(i));
    for (int j = 1; j <= m.n(); ++j) {
        gens.emplace_back("r" + std::to_string(j), A.r(j));
        gens.emplace_back("r" + std::to_string(j) + "^-1", A.r(j, -1));
    }
    gens.emplace_back("L", A.L());
    gens.emplace_back("L^-1", A.L(-1));
    std::string kval;
    for (int a : m.indices()) {
        OneForm<S> th = frame_form(F, a);
        for (const auto& [name, g] : gens) {
            OneForm<S> res = C.comm(g, th);
            r.expect(res.is_zero(), "[" + name + ", theta^" + std::to_string(a) + "]: " + C.str(res));
        }
        if (!m.odd()) {
            OneForm<S> kc = C.comm(A.K(), th);
            if (!kc.is_zero()) kval += (kval.empty() ? "" : "; ") + std::string("[K, theta^") + std::to_string(a) + "] != 0";
        }
    }
    if (!m.odd() && kval.empty()) kval = "[K, theta^a] = 0 for all a";
    return make_result("frame-commute", m.N(), cfg(A, F), r, sw, kval);
}

template <class S>
CheckResult check_frame_rel(const Calculus<S>& C, const Frame<S>& F) {
    Stopwatch sw;
    Residual r;
    const auto& A = C.algebra();
    const auto& m = A.model();
    const auto& d = C.matrices();
    const auto& I = m.indices();
    std::map<int, OneForm<S>> th;
    for (int a : I) th[a] = frame_form(F, a);
    std::map<std::pair<int, int>, TwoForm<S>> tt;
    for (int a : I)
        for (int b : I) tt[{a, b}] = C.wedge(th[a], th[b]);
    for (const auto* P : {&d.proj.s, &d.proj.t})
        for (int c : I)
            for (int e : I) {
                TwoForm<S> res(F.calc);
                for (const auto& en : P->row(c, e)) {
                    TwoForm<S> t = tt[{en.a, en.b}];
                    TwoForm<S> sc(F.calc);
                    for (const auto& [key, v] : t.coeffs()) sc.add(key.first, key.second, v * F_(en.v));
                    res += sc;
                }
                r.expect(res.is_zero(), std::string(P == &d.proj.s ? "P_s" : "P_t") + " theta theta at " +
                                            idx({c, e}) + ": " + C.str(res));
            }
    return make_result("frame-rel", m.N(), cfg(A, F), r, sw);
}

template <class S>
CheckResult check_duality(const Calculus<S>& C, const Frame<S>& F) {
    Stopwatch sw;
    Residual r;
    const auto& A = C.algebra();
    const auto& I = A.model().indices();
    for (int l : I)
        for (int mm : I) {
            Elem<S> s;
            for (int a : I) s += A.mul(F.E(l, a), F.Th(a, mm));
            if (l == mm) s -= A.one();
            r.expect(s.is_zero(), "e^l_a theta^a_m at " + idx({l, mm}) + ": " + A.str(s));
        }
    for (int i : I) {
        OneForm<S> w(F.calc);
        for (int a : I) w += C.lmul(F.E(i, a), frame_form(F, a));
        OneForm<S> res = w - C.xi(i);
        r.expect(res.is_zero(), "e^i_a theta^a - xi^i at i=" + std::to_string(i) + ": " + C.str(res));
    }
    return make_result("duality", A.N(), cfg(A, F), r, sw);
}

template <class S>
CheckResult check_rtheta(const Algebra<S>& A, const MatrixData<S>& d, const Frame<S>& F) {
    Stopwatch sw;
    Residual r;
    const auto& I = A.model().indices();
    std::map<std::array<int, 4>, Elem<S>> pp;
    auto TT = [&](int a, int i, int b, int j) -> const Elem<S>& {
        auto key = std::array<int, 4>{a, i, b, j};
        auto it = pp.find(key);
        if (it != pp.end()) return it->second;
        return pp.emplace(key, A.mul(F.Th(a, i), F.Th(b, j))).first->second;
    };
    for (int a : I)
        for (int b : I)
            for (int i : I)
                for (int j : I) {
                    Elem<S> res;
                    for (const auto& en : d.rhat.row(a, b)) res += TT(en.b, j, en.a, i) * F_(en.v);
                    for (const auto& en : d.rhat.col(i, j)) res -= TT(b, en.b, a, en.a) * F_(en.v);
                    r.expect(res.is_zero(), "a,b,i,j=" + idx({a, b, i, j}) + ": " + A.str(res));
                }
    return make_result("rtheta", A.N(), cfg(A, F), r, sw);
}

template <class S>
CheckResult check_star_link(const Calculus<S>& C, const Calculus<S>& Cb, const FramePair<S>& P) {
    Stopwatch sw;
    Residual r;
    const auto& A = C.algebra();
    const auto& m = A.model();
    if (P.G.mode != RadMode::star_link) throw std::invalid_argument("star-link check needs star-link radical mode");
    for (int a : m.indices()) {
        Elem<S> res = A.star(P.F.lambda.at(a)) + P.Fb.lambda.at(-a) * F_(m.g(a, -a));
        r.expect(res.is_zero(), "lambda_a^* + g^ab lambdabar_b at a=" + std::to_string(a) + ": " + A.str(res));
        OneForm<S> w = star_form(C, Cb, frame_form(P.F, a)) - frame_form(P.Fb, -a) * F_(m.g(-a, a));
        r.expect(w.is_zero(), "(theta^a)^* - thetabar^b g_ba at a=" + std::to_string(a) + ": " + Cb.str(w));
    }
    return make_result("star-link", m.N(), "star-link " + m.scalars().label(), r, sw);
}

template <class S>
CheckResult check_partial_link(const Calculus<S>& C, const Frame<S>& F, int samples, unsigned seed) {
    Stopwatch sw;
    Residual r;
    const auto& A = C.algebra();
    const auto& I = A.model().indices();
    const bool bar = F.calc == Calc::barred;
    auto L = phi_L(A, F);
    Elem<S> Li = A.L(bar ? 1 : -1);
    std::map<std::pair<int, int>, Elem<S>> LLi;
    for (const auto& [k, v] : L) LLi[k] = A.mul(v, Li);
    std::mt19937 rng(seed);
    WordOptions opt;
    opt.dilatator = false;
    for (int t = 0; t < samples; ++t) {
        Elem<S> f = t == 0 ? A.one() : t == 1 ? A.x(1) : random_element(A, rng, opt);
        OneForm<S> df = C.d(f);
        std::map<int, Elem<S>> ef;
        for (int a : I) ef[a] = A.comm(F.lambda.at(a), f);
        for (int i : I) {
            Elem<S> want;
            for (int a : I) {
                auto it = LLi.find({a, i});
                if (it != LLi.end() && !ef[a].is_zero()) want += A.mul(ef[a], it->second);
            }
            Elem<S> res = df.at(i) - want;
            r.expect(res.is_zero(), "sample " + std::to_string(t) + " i=" + std::to_string(i) + ": " + A.str(res));
        }
    }
    return make_result("partial-link", A.N(), cfg(A, F), r, sw);
}

#define QE_INST(S)                                                                                              \
    template FramePair<S> make_frame_pair(const Algebra<S>&, RadMode);                                          \
    template std::map<std::pair<int, int>, Elem<S>> phi_L(const Algebra<S>&, const Frame<S>&);                  \
    template OneForm<S> frame_form(const Frame<S>&, int);                                                       \
    template CheckResult check_e_table(const Algebra<S>&, const Frame<S>&, const std::map<int, Field<S>>&);     \
    template CheckResult check_xlambda(const Algebra<S>&, const MatrixData<S>&, const Frame<S>&);               \
    template CheckResult check_lambdax(const Algebra<S>&, const MatrixData<S>&, const Frame<S>&);               \
    template CheckResult check_rll(const Algebra<S>&, const MatrixData<S>&, const Frame<S>&);                   \
    template CheckResult check_gll(const Algebra<S>&, const Frame<S>&);                                         \
    template CheckResult check_lambda_rel(const Algebra<S>&, const MatrixData<S>&, const Frame<S>&);            \
    template CheckResult check_s2(const Algebra<S>&, const Frame<S>&);                                          \
    template CheckResult check_lambda_comm(const Algebra<S>&, const Frame<S>&);                                 \
    template CheckResult check_phi_L(const Algebra<S>&, const MatrixData<S>&, const Frame<S>&);                 \
    template CheckResult check_theorem3(const Algebra<S>&, const MatrixData<S>&, const FramePair<S>&);          \
    template CheckResult check_even_obstruction(const Algebra<S>&, const MatrixData<S>&, const FramePair<S>&);  \
    template CheckResult check_frame_commute(const Calculus<S>&, const Frame<S>&);                              \
    template CheckResult check_frame_rel(const Calculus<S>&, const Frame<S>&);                                  \
    template CheckResult check_duality(const Calculus<S>&, const Frame<S>&);                                    \
    template CheckResult check_rtheta(const Algebra<S>&, const MatrixData<S>&, const Frame<S>&);                \
    template CheckResult check_star_link(const Calculus<S>&, const Calculus<S>&, const FramePair<S>&);          \
    template CheckResult check_partial_link(const Calculus<S>&, const Frame<S>&, int, unsigned);

QE_INST(RatFunc)
QE_INST(QNum)

}  // namespace qe
