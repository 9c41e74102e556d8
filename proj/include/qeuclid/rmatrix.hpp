#pragma once

#include <array>
#include <atomic>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "qeuclid/model.hpp"
#include "qeuclid/report.hpp"

namespace qe {

// Sparse T^{ij}_{kl}: upper pair (i,j) is the row, lower pair (k,l) the column.
template <class S>
class Tensor {
public:
    using Key = std::array<int, 4>;
    struct Entry {
        int a, b;
        S v;
    };

    Tensor() = default;
    explicit Tensor(int N) : N_(N) {}
    Tensor(const Tensor& o) : N_(o.N_), e_(o.e_) {}
    Tensor(Tensor&& o) noexcept;
    Tensor& operator=(const Tensor& o);
    Tensor& operator=(Tensor&& o) noexcept;
    static Tensor identity(const Model<S>& m);

    int N() const { return N_; }
    const std::map<Key, S>& entries() const { return e_; }
    size_t nnz() const { return e_.size(); }
    S at(int i, int j, int k, int l) const;
    void add(int i, int j, int k, int l, const S& v);
    bool is_zero() const { return e_.empty(); }
    std::string str() const;  // first nonzero entry, for witnesses

    Tensor operator*(const Tensor& o) const;  // (AB)^{ij}_{mn} = A^{ij}_{kl} B^{kl}_{mn}
    Tensor operator+(const Tensor& o) const;
    Tensor operator-(const Tensor& o) const;
    Tensor scaled(const S& c) const;
    template <class F>
    Tensor map(F&& f) const {
        Tensor r(N_);
        for (const auto& [key, v] : e_) r.add(key[0], key[1], key[2], key[3], f(v));
        return r;
    }

    // Nonzero entries of row (i,j) / column (k,l). Safe to call from several
    // threads once the tensor is no longer modified.
    const std::vector<Entry>& row(int i, int j) const;
    const std::vector<Entry>& col(int k, int l) const;

private:
    int slot(int i, int j) const;
    void index() const;
    int N_ = 0;
    std::map<Key, S> e_;
    mutable std::vector<std::vector<Entry>> rows_, cols_;
    mutable std::atomic<bool> indexed_{false};
};

// R-hat built entry by entry from its five summand families.
template <class S>
Tensor<S> build_rhat(const Model<S>& m);

// g^{ij} g_{kl}
template <class S>
Tensor<S> metric_outer(const Model<S>& m);

template <class S>
struct Projectors {
    Tensor<S> s, a, t;
};

// Spectral projectors prod_{nu != mu} (R - l_nu)/(l_mu - l_nu) for the
// eigenvalues (q, -1/q, q^{1-N}).
template <class S>
Projectors<S> spectral_projectors(const Model<S>& m, const Tensor<S>& rhat);

// q^{-1} P_s - q P_a + q^{N-1} P_t
template <class S>
Tensor<S> rhat_inverse(const Model<S>& m, const Projectors<S>& p);

// A tensor acting on legs (1,2) (first = true) or (2,3) of V x V x V.
template <class S>
struct Leg {
    const Tensor<S>* t;
    bool first;
};

// Residual of a product of leg operators, lhs minus rhs, as a sparse 6-leg map.
template <class S>
std::map<std::array<int, 6>, S> chain_residual(const std::vector<Leg<S>>& lhs, const std::vector<Leg<S>>& rhs);

// Residual R12 R23 R12 - R23 R12 R23 as a sparse 6-leg map; empty when the
// braid equation holds.
template <class S>
std::map<std::array<int, 6>, S> braid_residual(const Tensor<S>& t);

// Rank of a tensor viewed as an N^2 x N^2 matrix, by Gaussian elimination.
template <class S>
int matrix_rank(const Model<S>& m, const Tensor<S>& t);

// Everything the matrix-level suites need, built once per (N, scalar point).
template <class S>
struct MatrixData {
    Model<S> model;
    Tensor<S> rhat, rinv, gg;
    Projectors<S> proj;
    explicit MatrixData(Model<S> m);
    MatrixData(Model<S> m, Tensor<S> rhat, Projectors<S> proj);
};

// Identity checks. Each returns one CheckResult.
template <class S>
CheckResult check_braid(const MatrixData<S>& d);
template <class S>
CheckResult check_braid2(const MatrixData<S>& d);
template <class S>
CheckResult check_propR1(const MatrixData<S>& d);
template <class S>
CheckResult check_propR2(const MatrixData<S>& d);
template <class S>
CheckResult check_propR3(const MatrixData<S>& d);
template <class S>
CheckResult check_squareR(const MatrixData<S>& d);
template <class S>
CheckResult check_gRrel(const MatrixData<S>& d);
template <class S>
CheckResult check_metric(const MatrixData<S>& d);
template <class S>
CheckResult check_projectors(const MatrixData<S>& d);
template <class S>
CheckResult check_Pt(const MatrixData<S>& d);
template <class S>
CheckResult check_ranks(const MatrixData<S>& d);

}  // namespace qe
