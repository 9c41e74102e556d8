#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "qeuclid/field.hpp"

namespace qe {

// Index set, rho, metric and the standard constants for a given N.
//
// Indices run over -n..n (N odd) or -n..-1,1..n (N even). rho decreases
// along the index order: rho_i = 1/2 - i (N odd) or 1 - i (N even) for i > 0,
// rho_{-i} = -rho_i. g_{ij} = q^{-rho_i} delta_{i,-j} and g^{ij} = g_{ij}.
template <class S>
class Model {
public:
    explicit Model(int N, Scalars<S> sc = Scalars<S>());

    int N() const { return N_; }
    int n() const { return n_; }
    bool odd() const { return odd_; }
    const std::vector<int>& indices() const { return idx_; }
    bool valid(int i) const { return i >= -n_ && i <= n_ && (odd_ || i != 0); }
    int pos(int i) const { return odd_ ? i + n_ : (i < 0 ? i + n_ : i + n_ - 1); }
    int rho2(int i) const;  // 2 rho_i

    const Scalars<S>& scalars() const { return sc_; }
    S s(int e) const { return sc_.spow(e); }  // q^{e/2}
    S q(int e = 1) const { return sc_.spow(2 * e); }
    const S& k() const { return k_; }
    const S& h() const { return h_; }
    S omega(int i) const;                 // q^{rho_i} + q^{-rho_i}
    S g(int i, int j) const;              // g_{ij} = g^{ij}
    S rational(const mpq_class& v) const { return sc_.rational(v); }

private:
    int N_, n_;
    bool odd_;
    std::vector<int> idx_;
    Scalars<S> sc_;
    S k_, h_;
};

template <class S>
Model<S>::Model(int N, Scalars<S> sc) : N_(N), n_(N / 2), odd_(N % 2 == 1), sc_(std::move(sc)) {
    if (N < 3) throw std::invalid_argument("N must be at least 3");
    for (int i = -n_; i <= n_; ++i)
        if (odd_ || i != 0) idx_.push_back(i);
    k_ = q(1) - q(-1);
    h_ = s(1) - s(-1);
}

template <class S>
int Model<S>::rho2(int i) const {
    if (i == 0) return 0;
    int a = i > 0 ? i : -i;
    int r = odd_ ? 1 - 2 * a : 2 - 2 * a;
    return i > 0 ? r : -r;
}

template <class S>
S Model<S>::omega(int i) const {
    return s(rho2(i)) + s(-rho2(i));
}

template <class S>
S Model<S>::g(int i, int j) const {
    if (i != -j) return S(0);
    return s(-rho2(i));
}

}  // namespace qe
