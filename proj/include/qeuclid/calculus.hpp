#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <tuple>
#include <utility>

#include "qeuclid/algebra.hpp"
#include "qeuclid/frames.hpp"
#include "qeuclid/rmatrix.hpp"

namespace qe {

// Sum_i c_i xi^i with coefficients on the left.
template <class S>
class OneForm {
public:
    using E = Elem<S>;
    OneForm() = default;
    explicit OneForm(Calc c) : calc_(c) {}

    Calc calc() const { return calc_; }
    const std::map<int, E>& coeffs() const { return c_; }
    const E& at(int i) const;
    bool is_zero() const { return c_.empty(); }
    void add(int i, const E& v);

    OneForm& operator+=(const OneForm& o);
    OneForm& operator-=(const OneForm& o);
    OneForm& operator*=(const Field<S>& f);
    friend OneForm operator+(OneForm a, const OneForm& b) { return a += b; }
    friend OneForm operator-(OneForm a, const OneForm& b) { return a -= b; }
    friend OneForm operator*(OneForm a, const Field<S>& f) { return a *= f; }
    bool operator==(const OneForm& o) const { return calc_ == o.calc_ && c_ == o.c_; }

private:
    void check(const OneForm& o) const;
    Calc calc_ = Calc::unbarred;
    std::map<int, E> c_;
};

// Sum_{ij} c_{ij} xi^i xi^j, stored with the index pair projected by P_a.
template <class S>
class TwoForm {
public:
    using E = Elem<S>;
    using Key = std::pair<int, int>;
    TwoForm() = default;
    explicit TwoForm(Calc c) : calc_(c) {}

    Calc calc() const { return calc_; }
    const std::map<Key, E>& coeffs() const { return c_; }
    const E& at(int i, int j) const;
    bool is_zero() const { return c_.empty(); }
    void add(int i, int j, const E& v);
    TwoForm& operator+=(const TwoForm& o);
    TwoForm& operator-=(const TwoForm& o);
    friend TwoForm operator+(TwoForm a, const TwoForm& b) { return a += b; }
    friend TwoForm operator-(TwoForm a, const TwoForm& b) { return a -= b; }
    bool operator==(const TwoForm& o) const { return calc_ == o.calc_ && c_ == o.c_; }

private:
    Calc calc_ = Calc::unbarred;
    std::map<Key, E> c_;
};

// One of the two covariant calculi over A_N. Holds the coefficient transport
// xi^l f = Sum_m T(f)^l_m xi^m for every generator power f.
template <class S>
class Calculus {
public:
    using E = Elem<S>;
    using Form = OneForm<S>;

    Calculus(const Algebra<S>& A, const MatrixData<S>& d, Calc c);

    const Algebra<S>& algebra() const { return A_; }
    const MatrixData<S>& matrices() const { return d_; }
    Calc calc() const { return c_; }

    Form xi(int i) const;
    Form lmul(const E& f, const Form& w) const;  // f w
    Form rmul(const Form& w, const E& f) const;  // w f
    Form comm(const E& f, const Form& w) const { return lmul(f, w) - rmul(w, f); }  // f w - w f

    // xi^l g^e for a generator slot g
    const Form& xi_gen(int l, int slot, int e) const;

    const Form& dirac() const { return theta_; }
    Form d(const E& f) const { return comm(f, theta_); }  // -[theta, f]

    TwoForm<S> wedge(const Form& a, const Form& b) const;
    TwoForm<S> project(const std::map<std::pair<int, int>, E>& raw) const;  // right P_a action
    TwoForm<S> lmul(const E& f, const TwoForm<S>& w) const;

    std::string str(const Form& w) const;
    std::string str(const TwoForm<S>& w) const;

    // the radical-free frame used for the r_j and inverse-x transport
    const Frame<S>& reference_frame() const;

private:
    Form frame_transport(int l, const E& f) const;
    Form xi_mono(int l, const Mono& m) const;

    const Algebra<S>& A_;
    const MatrixData<S>& d_;
    Calc c_;
    Form theta_;
    mutable std::shared_ptr<Frame<S>> ref_;
    mutable std::once_flag ref_once_;
    mutable std::shared_mutex mu_;
    mutable std::map<std::tuple<int, int, int>, Form> gen_cache_;
    mutable std::map<std::pair<int, Mono>, Form> mono_cache_;
};

// (f xi^i)^* = xibar^j g_{ji} f^*, landing in the other calculus.
template <class S>
OneForm<S> star_form(const Calculus<S>& from, const Calculus<S>& to, const OneForm<S>& w);

}  // namespace qe
