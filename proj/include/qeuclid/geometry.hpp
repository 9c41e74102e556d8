#pragma once

#include <array>
#include <map>
#include <mutex>
#include <string>

#include "qeuclid/calculus.hpp"
#include "qeuclid/report.hpp"

namespace qe {

enum class Flip { qR, qR_inverse };

std::string to_string(Flip f);

// S = q Rhat or S = (q Rhat)^{-1}
template <class S>
Tensor<S> flip_matrix(const MatrixData<S>& d, Flip f);

// Sum over index tuples of f_{i..} xi^i (x) ... with left algebra coefficients.
template <class S, size_t K>
class TensorForm {
public:
    using E = Elem<S>;
    using Key = std::array<int, K>;

    const std::map<Key, E>& coeffs() const { return c_; }
    const E& at(const Key& k) const {
        static const E zero;
        auto it = c_.find(k);
        return it == c_.end() ? zero : it->second;
    }
    bool is_zero() const { return c_.empty(); }
    void add(const Key& k, const E& v) {
        if (v.is_zero()) return;
        auto [it, inserted] = c_.emplace(k, v);
        if (inserted) return;
        it->second += v;
        if (it->second.is_zero()) c_.erase(it);
    }
    TensorForm& operator+=(const TensorForm& o) {
        for (const auto& [k, v] : o.c_) add(k, v);
        return *this;
    }
    TensorForm& operator-=(const TensorForm& o) {
        for (const auto& [k, v] : o.c_) add(k, -v);
        return *this;
    }
    friend TensorForm operator-(TensorForm a, const TensorForm& b) { return a -= b; }
    bool operator==(const TensorForm& o) const { return c_ == o.c_; }

private:
    std::map<Key, E> c_;
};

template <class S>
using Tensor2 = TensorForm<S, 2>;
template <class S>
using Tensor3 = TensorForm<S, 3>;

// Flip, metric and covariant derivative attached to one calculus.
template <class S>
class Geometry {
public:
    using E = Elem<S>;

    Geometry(const Calculus<S>& C, Flip f);

    const Calculus<S>& calculus() const { return C_; }
    Flip flip() const { return f_; }
    const Tensor<S>& matrix() const { return S_; }

    Tensor2<S> tensor(const OneForm<S>& u, const OneForm<S>& v) const;  // u (x) v, coefficients moved left
    Tensor2<S> sigma(const Tensor2<S>& t) const;
    Tensor2<S> pi(const Tensor2<S>& t) const;    // P_a on the pair
    Tensor3<S> pi12(const Tensor3<S>& t) const;  // P_a on the first two legs

    // D xi = -theta (x) xi + sigma(xi (x) theta)
    const Tensor2<S>& Dxi(int i) const;
    Tensor2<S> D(const OneForm<S>& w) const;
    // D on Omega^1 (x) Omega^1: Leibniz with sigma on the first leg
    Tensor3<S> D2(const Tensor2<S>& t) const;
    Tensor3<S> curvature(int i) const { return pi12(D2(Dxi(i))); }

    // g(theta^a (x) theta^b) = g^{ab}, evaluated through xi^l = e^l_a theta^a
    E metric(const OneForm<S>& u, const OneForm<S>& v) const;

    std::string str(const Tensor2<S>& t) const;
    std::string str(const Tensor3<S>& t) const;

private:
    const Calculus<S>& C_;
    Flip f_;
    Tensor<S> S_;
    mutable std::once_flag dxi_once_;
    mutable std::map<int, Tensor2<S>> dxi_;
};

// Braid relation for S.
template <class S>
CheckResult check_sigma_braid(const MatrixData<S>& d, Flip f);
// P_a (S + 1) = (S + 1) P_a = 0 and S12 S23 P_a12 = P_a23 S12 S23
template <class S>
CheckResult check_sigma_pi(const MatrixData<S>& d, Flip f);
// S^{ae}_{df} g^{fg} S^{cb}_{eg} = c g^{ac} delta^b_d with c = q^{+-2}
template <class S>
CheckResult check_metric_compat(const MatrixData<S>& d, Flip f);
// D xi = 0 for the flip adapted to the calculus, the closed form otherwise
template <class S>
CheckResult check_dxi(const Geometry<S>& G);
template <class S>
CheckResult check_torsion(const Geometry<S>& G);
template <class S>
CheckResult check_curvature(const Geometry<S>& G);
// g(xi^i (x) xi^j) = g^{ij} Lambda^{+-2}
template <class S>
CheckResult check_metric_xi(const Geometry<S>& G);
// g(sigma(eta^* (x) xi^*)) = g(xi (x) eta)^* on basis forms, both directions
template <class S>
CheckResult check_reality(const Geometry<S>& G, const Geometry<S>& Gb);
// q = 1, Lambda = K = 1 in g(xi^i (x) xi^j) and in D xi; symbolic scalars only
CheckResult check_classical_limit(const Geometry<RatFunc>& G);

// The flip for which D xi = 0 in the given calculus.
Flip adapted_flip(Calc c);

}  // namespace qe
