#include "qeuclid/rmatrix.hpp"

#include <mutex>
#include <sstream>
#include <type_traits>

namespace qe {

namespace {

template <class S>
const S& zero_scalar() {
    static const S z(0);
    return z;
}

std::string key_str(const std::array<int, 4>& k) {
    std::ostringstream os;
    os << "[" << k[0] << "," << k[1] << "|" << k[2] << "," << k[3] << "]";
    return os.str();
}

}  // namespace

template <class S>
Tensor<S>::Tensor(Tensor&& o) noexcept
    : N_(o.N_), e_(std::move(o.e_)), rows_(std::move(o.rows_)), cols_(std::move(o.cols_)),
      indexed_(o.indexed_.load()) {
    o.indexed_ = false;
}

template <class S>
Tensor<S>& Tensor<S>::operator=(const Tensor& o) {
    if (this != &o) {
        N_ = o.N_;
        e_ = o.e_;
        indexed_ = false;
    }
    return *this;
}

template <class S>
Tensor<S>& Tensor<S>::operator=(Tensor&& o) noexcept {
    N_ = o.N_;
    e_ = std::move(o.e_);
    rows_ = std::move(o.rows_);
    cols_ = std::move(o.cols_);
    indexed_ = o.indexed_.load();
    o.indexed_ = false;
    return *this;
}

template <class S>
Tensor<S> Tensor<S>::identity(const Model<S>& m) {
    Tensor t(m.N());
    for (int i : m.indices())
        for (int j : m.indices()) t.add(i, j, i, j, S(1));
    return t;
}

template <class S>
S Tensor<S>::at(int i, int j, int k, int l) const {
    auto it = e_.find(Key{i, j, k, l});
    return it == e_.end() ? S(0) : it->second;
}

template <class S>
void Tensor<S>::add(int i, int j, int k, int l, const S& v) {
    if (v.is_zero()) return;
    indexed_ = false;
    Key key{i, j, k, l};
    auto it = e_.find(key);
    if (it == e_.end()) {
        e_.emplace(key, v);
        return;
    }
    it->second += v;
    if (it->second.is_zero()) e_.erase(it);
}

template <class S>
std::string Tensor<S>::str() const {
    if (e_.empty()) return "0";
    const auto& [k, v] = *e_.begin();
    return key_str(k) + " = " + v.str();
}

template <class S>
int Tensor<S>::slot(int i, int j) const {
    int n = N_ / 2;
    bool odd = N_ % 2 == 1;
    auto pos = [&](int x) { return odd ? x + n : (x < 0 ? x + n : x + n - 1); };
    return pos(i) * N_ + pos(j);
}

template <class S>
void Tensor<S>::index() const {
    if (indexed_.load(std::memory_order_acquire)) return;
    static std::mutex mu;
    std::lock_guard lk(mu);
    if (indexed_.load(std::memory_order_relaxed)) return;
    rows_.assign(N_ * N_, {});
    cols_.assign(N_ * N_, {});
    for (const auto& [k, v] : e_) {
        rows_[slot(k[0], k[1])].push_back({k[2], k[3], v});
        cols_[slot(k[2], k[3])].push_back({k[0], k[1], v});
    }
    indexed_.store(true, std::memory_order_release);
}

template <class S>
const std::vector<typename Tensor<S>::Entry>& Tensor<S>::row(int i, int j) const {
    index();
    return rows_[slot(i, j)];
}

template <class S>
const std::vector<typename Tensor<S>::Entry>& Tensor<S>::col(int k, int l) const {
    index();
    return cols_[slot(k, l)];
}

template <class S>
Tensor<S> Tensor<S>::operator*(const Tensor& o) const {
    Tensor r(N_);
    for (const auto& [k, a] : e_)
        for (const auto& en : o.row(k[2], k[3])) r.add(k[0], k[1], en.a, en.b, a * en.v);
    return r;
}

template <class S>
Tensor<S> Tensor<S>::operator+(const Tensor& o) const {
    Tensor r = *this;
    for (const auto& [k, v] : o.e_) r.add(k[0], k[1], k[2], k[3], v);
    return r;
}

template <class S>
Tensor<S> Tensor<S>::operator-(const Tensor& o) const {
    Tensor r = *this;
    for (const auto& [k, v] : o.e_) r.add(k[0], k[1], k[2], k[3], -v);
    return r;
}

template <class S>
Tensor<S> Tensor<S>::scaled(const S& c) const {
    Tensor r(N_);
    if (c.is_zero()) return r;
    for (const auto& [k, v] : e_) r.add(k[0], k[1], k[2], k[3], v * c);
    return r;
}

template <class S>
Tensor<S> build_rhat(const Model<S>& m) {
    Tensor<S> R(m.N());
    const auto& I = m.indices();
    S q = m.q(), qi = m.q(-1);
    for (int i : I)
        if (i != 0) R.add(i, i, i, i, q);
    for (int i : I)
        for (int j : I)
            if ((i != j && i != -j) || (i == 0 && j == 0)) R.add(i, j, j, i, S(1));
    for (int i : I)
        if (i != 0) R.add(i, -i, -i, i, qi);
    for (int i : I)
        for (int j : I)
            if (i < j) {
                R.add(i, j, i, j, m.k());
                R.add(i, -i, -j, j, -(m.k() * m.s(-m.rho2(i) + m.rho2(j))));
            }
    return R;
}

template <class S>
Tensor<S> metric_outer(const Model<S>& m) {
    Tensor<S> t(m.N());
    for (int i : m.indices())
        for (int k : m.indices()) t.add(i, -i, k, -k, m.g(i, -i) * m.g(k, -k));
    return t;
}

template <class S>
Projectors<S> spectral_projectors(const Model<S>& m, const Tensor<S>& R) {
    Tensor<S> one = Tensor<S>::identity(m);
    S ls = m.q(), la = -m.q(-1), lt = m.q(1 - m.N());
    auto shifted = [&](const S& l) { return R - one.scaled(l); };
    Tensor<S> Rs = shifted(ls), Ra = shifted(la), Rt = shifted(lt);
    Projectors<S> p;
    p.s = (Ra * Rt).scaled(((ls - la) * (ls - lt)).inv());
    p.a = (Rs * Rt).scaled(((la - ls) * (la - lt)).inv());
    p.t = (Rs * Ra).scaled(((lt - ls) * (lt - la)).inv());
    return p;
}

template <class S>
Tensor<S> rhat_inverse(const Model<S>& m, const Projectors<S>& p) {
    return p.s.scaled(m.q(-1)) - p.a.scaled(m.q()) + p.t.scaled(m.q(m.N() - 1));
}

template <class S>
std::map<std::array<int, 6>, S> chain_residual(const std::vector<Leg<S>>& lhs, const std::vector<Leg<S>>& rhs) {
    using K6 = std::array<int, 6>;
    using Op = std::map<K6, S>;
    // ops on V^{x3}: map row triple -> col triple, composed left to right as
    // (AB)^{row}_{col} = A^{row}_{mid} B^{mid}_{col}
    auto lift = [](const Leg<S>& leg) {
        const Tensor<S>& t = *leg.t;
        std::vector<int> I;
        int N = t.N(), n = N / 2;
        for (int i = -n; i <= n; ++i)
            if (N % 2 == 1 || i != 0) I.push_back(i);
        Op o;
        for (const auto& [k, v] : t.entries())
            for (int c : I) {
                if (leg.first) o[K6{k[0], k[1], c, k[2], k[3], c}] = v;
                else o[K6{c, k[0], k[1], c, k[2], k[3]}] = v;
            }
        return o;
    };
    auto compose = [](const Op& A, const Op& B) {
        std::map<std::array<int, 3>, std::vector<std::pair<std::array<int, 3>, S>>> brow;
        for (const auto& [k, v] : B) brow[{k[0], k[1], k[2]}].push_back({{k[3], k[4], k[5]}, v});
        Op C;
        for (const auto& [k, a] : A) {
            auto it = brow.find({k[3], k[4], k[5]});
            if (it == brow.end()) continue;
            for (const auto& [col, b] : it->second) {
                K6 key{k[0], k[1], k[2], col[0], col[1], col[2]};
                auto [pos, inserted] = C.emplace(key, a * b);
                if (!inserted) pos->second += a * b;
            }
        }
        for (auto it = C.begin(); it != C.end();) it = it->second.is_zero() ? C.erase(it) : std::next(it);
        return C;
    };
    auto product = [&](const std::vector<Leg<S>>& legs) {
        Op acc = lift(legs.at(0));
        for (size_t i = 1; i < legs.size(); ++i) acc = compose(acc, lift(legs[i]));
        return acc;
    };
    Op l = product(lhs), r = product(rhs);
    for (const auto& [k, v] : r) {
        auto [pos, inserted] = l.emplace(k, -v);
        if (!inserted) pos->second -= v;
    }
    for (auto it = l.begin(); it != l.end();) it = it->second.is_zero() ? l.erase(it) : std::next(it);
    return l;
}

template <class S>
std::map<std::array<int, 6>, S> braid_residual(const Tensor<S>& t) {
    return chain_residual<S>({{&t, true}, {&t, false}, {&t, true}}, {{&t, false}, {&t, true}, {&t, false}});
}

template <class S>
int matrix_rank(const Model<S>& m, const Tensor<S>& t) {
    int N = m.N(), D = N * N;
    std::vector<std::vector<S>> M(D, std::vector<S>(D, S(0)));
    for (const auto& [k, v] : t.entries()) M[m.pos(k[0]) * N + m.pos(k[1])][m.pos(k[2]) * N + m.pos(k[3])] = v;
    int rank = 0;
    for (int col = 0; col < D && rank < D; ++col) {
        int piv = -1;
        for (int r = rank; r < D; ++r)
            if (!M[r][col].is_zero()) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(M[piv], M[rank]);
        S inv = M[rank][col].inv();
        for (int r = rank + 1; r < D; ++r) {
            if (M[r][col].is_zero()) continue;
            S f = M[r][col] * inv;
            for (int c = col; c < D; ++c)
                if (!M[rank][c].is_zero()) M[r][c] -= f * M[rank][c];
        }
        ++rank;
    }
    return rank;
}

template <class S>
MatrixData<S>::MatrixData(Model<S> m) : model(std::move(m)) {
    rhat = build_rhat(model);
    proj = spectral_projectors(model, rhat);
    rinv = rhat_inverse(model, proj);
    gg = metric_outer(model);
}

template <class S>
MatrixData<S>::MatrixData(Model<S> m, Tensor<S> r, Projectors<S> p)
    : model(std::move(m)), rhat(std::move(r)), proj(std::move(p)) {
    rinv = rhat_inverse(model, proj);
    gg = metric_outer(model);
}

namespace {

template <class S>
std::string cfg(const Model<S>& m) {
    return m.scalars().label();
}

}  // namespace

template <class S>
CheckResult check_braid(const MatrixData<S>& d) {
    Stopwatch sw;
    Residual r;
    auto res = braid_residual(d.rhat);
    r.expect(res.empty(), res.empty() ? "" : "braid residual has " + std::to_string(res.size()) + " nonzero entries");
    return make_result("braid", d.model.N(), cfg(d.model), r, sw);
}

template <class S>
CheckResult check_braid2(const MatrixData<S>& d) {
    Stopwatch sw;
    Residual r;
    // f(R12) R23 R12 = R23 R12 f(R23) for the spectral projectors and R^-1
    const Tensor<S>* fs[4] = {&d.proj.s, &d.proj.a, &d.proj.t, &d.rinv};
    const char* names[4] = {"P_s", "P_a", "P_t", "R^-1"};
    const Tensor<S>& R = d.rhat;
    for (int i = 0; i < 4; ++i) {
        auto res = chain_residual<S>({{fs[i], true}, {&R, false}, {&R, true}}, {{&R, false}, {&R, true}, {fs[i], false}});
        r.expect(res.empty(), std::string("f = ") + names[i] + ": " + std::to_string(res.size()) + " nonzero entries");
    }
    return make_result("braid2", d.model.N(), cfg(d.model), r, sw);
}

template <class S>
CheckResult check_propR1(const MatrixData<S>& d) {
    Stopwatch sw;
    Residual r;
    for (const auto& [k, v] : d.rhat.entries())
        r.expect_zero(v - d.rhat.at(k[2], k[3], k[0], k[1]), "R" + key_str(k) + " - R^T");
    // R^{ij}_{kl} := Rhat^{ji}_{kl} is lower triangular in the pair order
    for (const auto& [k, v] : d.rhat.entries()) {
        std::array<int, 2> rowp{k[1], k[0]}, colp{k[2], k[3]};
        r.expect(!(rowp < colp), "R = P Rhat not lower triangular at " + key_str(k));
    }
    return make_result("propR1", d.model.N(), cfg(d.model), r, sw);
}

template <class S>
CheckResult check_propR2(const MatrixData<S>& d) {
    Stopwatch sw;
    Residual r;
    const auto& sc = d.model.scalars();
    Tensor<S> rbar;
    if constexpr (std::is_same_v<S, QNum>) {
        // R-hat at 1/q, carried back through 1/s = s/q
        const QPoint* pt = sc.point();
        Model<QNum> inv(d.model.N(), Scalars<QNum>(1 / pt->q));
        rbar = build_rhat(inv).map([&](const QNum& v) { return QNum(v.a(), v.b() / pt->q, pt); });
    } else {
        rbar = d.rhat.map([&](const S& v) { return sc.bar(v); });
    }
    for (int i : d.model.indices())
        for (int j : d.model.indices())
            for (int k : d.model.indices())
                for (int l : d.model.indices())
                    r.expect_zero(rbar.at(i, j, k, l) - d.rinv.at(-i, -j, -k, -l),
                                  "Rhat(1/q)" + key_str({i, j, k, l}));
    return make_result("propR2", d.model.N(), cfg(d.model), r, sw);
}

template <class S>
CheckResult check_propR3(const MatrixData<S>& d) {
    Stopwatch sw;
    Residual r;
    for (const auto& [k, v] : d.rhat.entries()) {
        int i = k[0], j = k[1], kk = k[2], l = k[3];
        bool ok = (i != -j) ? ((kk == i && l == j) || (l == i && kk == j)) : (kk == -l);
        r.expect(ok, "nonzero Rhat" + key_str(k) + " outside the allowed pattern");
    }
    // the R^{-1} entries obey the same pattern
    for (const auto& [k, v] : d.rinv.entries()) {
        int i = k[0], j = k[1], kk = k[2], l = k[3];
        bool ok = (i != -j) ? ((kk == i && l == j) || (l == i && kk == j)) : (kk == -l);
        r.expect(ok, "nonzero Rhat^-1" + key_str(k) + " outside the allowed pattern");
    }
    return make_result("propR3", d.model.N(), cfg(d.model), r, sw);
}

template <class S>
CheckResult check_squareR(const MatrixData<S>& d) {
    Stopwatch sw;
    Residual r;
    const auto& m = d.model;
    Tensor<S> lhs = d.rhat * d.rhat;
    Tensor<S> rhs = d.rhat.scaled(m.k()) + Tensor<S>::identity(m) - d.gg.scaled(m.q(1 - m.N()) * m.k());
    Tensor<S> diff = lhs - rhs;
    r.expect(diff.is_zero(), "R^2 - kR - 1 + q^{1-N} k gg: " + diff.str());
    Tensor<S> one = d.rhat * d.rinv - Tensor<S>::identity(m);
    r.expect(one.is_zero(), "R R^-1 - 1: " + one.str());
    return make_result("squareR", m.N(), cfg(m), r, sw);
}

template <class S>
CheckResult check_gRrel(const MatrixData<S>& d) {
    Stopwatch sw;
    Residual r;
    const auto& m = d.model;
    const auto& I = m.indices();
    for (int sign = 0; sign < 2; ++sign) {
        const Tensor<S>& A = sign == 0 ? d.rhat : d.rinv;
        const Tensor<S>& B = sign == 0 ? d.rinv : d.rhat;
        for (int i : I)
            for (int h : I)
                for (int j : I)
                    for (int k : I) {
                        // g_{il} A^{lh}_{jk} = B^{hl}_{ij} g_{lk}
                        S lhs = m.g(i, -i) * A.at(-i, h, j, k);
                        S rhs = B.at(h, -k, i, j) * m.g(-k, k);
                        r.expect_zero(lhs - rhs, "g R^" + std::string(sign ? "-1" : "+1") + key_str({i, h, j, k}));
                        // g^{il} A^{jk}_{lh} = B^{ij}_{hl} g^{lk}
                        S lhs2 = m.g(i, -i) * A.at(j, k, -i, h);
                        S rhs2 = B.at(i, j, h, -k) * m.g(-k, k);
                        r.expect_zero(lhs2 - rhs2, "g^ R^" + std::string(sign ? "-1" : "+1") + key_str({i, h, j, k}));
                    }
    }
    return make_result("gRrel", m.N(), cfg(m), r, sw);
}

template <class S>
CheckResult check_metric(const MatrixData<S>& d) {
    Stopwatch sw;
    Residual r;
    const auto& m = d.model;
    const auto& I = m.indices();
    int nonzero = 0;
    for (int i : I)
        for (int j : I) {
            if (!m.g(i, j).is_zero()) ++nonzero;
            S acc(0);
            for (int l : I) acc += m.g(i, l) * m.g(l, j);
            r.expect_zero(acc - S(i == j ? 1 : 0), "g g^-1 - 1 at (" + std::to_string(i) + "," + std::to_string(j) + ")");
        }
    r.expect(nonzero == m.N(), "g has " + std::to_string(nonzero) + " nonzero entries");
    S tr(0);
    for (int i : I) tr += m.g(i, -i) * m.g(i, -i);
    int rn = m.rho2(m.n());
    S pref = m.k() * (m.omega(m.n()) * (m.s(-rn + 2) - m.s(rn - 2))).inv();
    r.expect_zero(tr * pref - S(1), "g^{sm} g_{sm} times the P_t prefactor");
    return make_result("metric", m.N(), cfg(m), r, sw);
}

template <class S>
CheckResult check_projectors(const MatrixData<S>& d) {
    Stopwatch sw;
    Residual r;
    const auto& m = d.model;
    const Tensor<S>* P[3] = {&d.proj.s, &d.proj.a, &d.proj.t};
    const char* names[3] = {"s", "a", "t"};
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            Tensor<S> prod = (*P[a]) * (*P[b]);
            Tensor<S> diff = a == b ? prod - *P[a] : prod;
            r.expect(diff.is_zero(), std::string("P_") + names[a] + " P_" + names[b] + ": " + diff.str());
        }
    Tensor<S> sum = d.proj.s + d.proj.a + d.proj.t - Tensor<S>::identity(m);
    r.expect(sum.is_zero(), "P_s + P_a + P_t - 1: " + sum.str());
    Tensor<S> rec = d.proj.s.scaled(m.q()) - d.proj.a.scaled(m.q(-1)) + d.proj.t.scaled(m.q(1 - m.N())) - d.rhat;
    r.expect(rec.is_zero(), "q P_s - q^-1 P_a + q^{1-N} P_t - Rhat: " + rec.str());
    return make_result("projectors", m.N(), cfg(m), r, sw);
}

template <class S>
CheckResult check_Pt(const MatrixData<S>& d) {
    Stopwatch sw;
    Residual r;
    const auto& m = d.model;
    S tr(0);
    for (int i : m.indices()) tr += m.g(i, -i) * m.g(i, -i);
    Tensor<S> a = d.proj.t - d.gg.scaled(tr.inv());
    r.expect(a.is_zero(), "P_t - (g^{sm}g_{sm})^-1 gg: " + a.str());
    int rn = m.rho2(m.n());
    S pref = m.k() * (m.omega(m.n()) * (m.s(-rn + 2) - m.s(rn - 2))).inv();
    Tensor<S> b = d.proj.t - d.gg.scaled(pref);
    r.expect(b.is_zero(), "P_t - k/(w_n(q^{-rho_n+1} - q^{rho_n-1})) gg: " + b.str());
    return make_result("Pt", m.N(), cfg(m), r, sw);
}

template <class S>
CheckResult check_ranks(const MatrixData<S>& d) {
    Stopwatch sw;
    Residual r;
    const auto& m = d.model;
    int N = m.N();
    int expect[3] = {N * (N + 1) / 2 - 1, N * (N - 1) / 2, 1};
    const Tensor<S>* P[3] = {&d.proj.s, &d.proj.a, &d.proj.t};
    std::string value;
    for (int a = 0; a < 3; ++a) {
        S tr(0);
        for (int i : m.indices())
            for (int j : m.indices()) tr += P[a]->at(i, j, i, j);
        r.expect_zero(tr - S(expect[a]), "trace of projector " + std::to_string(a));
        if constexpr (std::is_same_v<S, QNum>) {
            int rk = matrix_rank(m, *P[a]);
            r.expect(rk == expect[a], "rank " + std::to_string(rk) + " != " + std::to_string(expect[a]));
            value += (a ? "," : "") + std::to_string(rk);
        } else {
            value += (a ? "," : "") + tr.str();
        }
    }
    return make_result("ranks", N, cfg(m), r, sw, "(" + value + ")");
}

#define QE_INST(S)                                                                          \
    template class Tensor<S>;                                                               \
    template Tensor<S> build_rhat(const Model<S>&);                                         \
    template Tensor<S> metric_outer(const Model<S>&);                                       \
    template Projectors<S> spectral_projectors(const Model<S>&, const Tensor<S>&);          \
    template Tensor<S> rhat_inverse(const Model<S>&, const Projectors<S>&);                 \
    template std::map<std::array<int, 6>, S> braid_residual(const Tensor<S>&);              \
    template std::map<std::array<int, 6>, S> chain_residual(const std::vector<Leg<S>>&,     \
                                                            const std::vector<Leg<S>>&);    \
    template CheckResult check_braid2(const MatrixData<S>&);                                \
    template int matrix_rank(const Model<S>&, const Tensor<S>&);                            \
    template struct MatrixData<S>;                                                          \
    template CheckResult check_braid(const MatrixData<S>&);                                 \
    template CheckResult check_propR1(const MatrixData<S>&);                                \
    template CheckResult check_propR2(const MatrixData<S>&);                                \
    template CheckResult check_propR3(const MatrixData<S>&);                                \
    template CheckResult check_squareR(const MatrixData<S>&);                               \
    template CheckResult check_gRrel(const MatrixData<S>&);                                 \
    template CheckResult check_metric(const MatrixData<S>&);                                \
    template CheckResult check_projectors(const MatrixData<S>&);                            \
    template CheckResult check_Pt(const MatrixData<S>&);                                    \
    template CheckResult check_ranks(const MatrixData<S>&);

QE_INST(RatFunc)
QE_INST(QNum)

}  // namespace qe
