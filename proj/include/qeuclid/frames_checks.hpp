#pragma once

#include "qeuclid/calculus.hpp"
#include "qeuclid/frames.hpp"
#include "qeuclid/report.hpp"

namespace qe {

// Both frames for one choice of normalization constants.
template <class S>
struct FramePair {
    Gammas<S> G;
    Frame<S> F, Fb;
    const Frame<S>& of(Calc c) const { return c == Calc::unbarred ? F : Fb; }
};

template <class S>
FramePair<S> make_frame_pair(const Algebra<S>& A, RadMode mode);

// phi^-(L^-)^i_j = g^{ih} Lambda^{-1} e^k_h g_{kj}; barred: phi^+(L^+) with Lambda.
template <class S>
std::map<std::pair<int, int>, Elem<S>> phi_L(const Algebra<S>& A, const Frame<S>& F);

// theta^a as a 1-form theta^a_l xi^l
template <class S>
OneForm<S> frame_form(const Frame<S>& F, int a);

// Entrywise tables for e^i_a (unbarred) and ebar^i_a (barred), triangularity included.
template <class S>
CheckResult check_e_table(const Algebra<S>& A, const Frame<S>& F, const std::map<int, Field<S>>& gamma);
// x^h e^i_a = q Rhat^{hi}_{jk} e^j_a x^k  (barred: q^{-1} Rhat^{-1})
template <class S>
CheckResult check_xlambda(const Algebra<S>& A, const MatrixData<S>& d, const Frame<S>& F);
// lambda_a e^i_b = q^{-1} (Rhat^{-1})^{cd}_{ab} e^i_c lambda_d  (barred: q Rhat)
template <class S>
CheckResult check_lambdax(const Algebra<S>& A, const MatrixData<S>& d, const Frame<S>& F);
// Rhat^{ij}_{kl} e^k_a e^l_b = e^i_c e^j_d Rhat^{cd}_{ab}
template <class S>
CheckResult check_rll(const Algebra<S>& A, const MatrixData<S>& d, const Frame<S>& F);
// g^{ab} e^i_a e^j_b = g^{ij} Lambda^{+-2}, g_{ij} e^i_a e^j_b = g_{ab} Lambda^{+-2}
template <class S>
CheckResult check_gll(const Algebra<S>& A, const Frame<S>& F);
// P_a lambda lambda = 0 and its explicit q-commutator form
template <class S>
CheckResult check_lambda_rel(const Algebra<S>& A, const MatrixData<S>& d, const Frame<S>& F);
// closed form of s^2_a = Sum_{|c|,|d|<=a} g^{cd} lambda_c lambda_d
template <class S>
CheckResult check_s2(const Algebra<S>& A, const Frame<S>& F);
// r_i lambda_a, lambda_a Lambda and K lambda_a exchange rules
template <class S>
CheckResult check_lambda_comm(const Algebra<S>& A, const Frame<S>& F);
// triangularity, diagonal product, LLg and LL commutation of phi(L)
template <class S>
CheckResult check_phi_L(const Algebra<S>& A, const MatrixData<S>& d, const Frame<S>& F);
// Gluing for N odd in theorem3 mode: mixed RLL relation, L^+_ii L^-_ii = 1 and
// the gammabar_a gamma_a values.
template <class S>
CheckResult check_theorem3(const Algebra<S>& A, const MatrixData<S>& d, const FramePair<S>& P);
// N even: the (i=a=1, j=b=2) mixed relation cannot hold; passes when the
// residual is nonzero. The value field reports the residual.
template <class S>
CheckResult check_even_obstruction(const Algebra<S>& A, const MatrixData<S>& d, const FramePair<S>& P);

// [x^i, theta^a] = [r_j, theta^a] = [Lambda, theta^a] = 0; [K, theta^a] reported.
template <class S>
CheckResult check_frame_commute(const Calculus<S>& C, const Frame<S>& F);
// P_s theta theta = P_t theta theta = 0
template <class S>
CheckResult check_frame_rel(const Calculus<S>& C, const Frame<S>& F);
// xi^i = e^i_a theta^a and e^l_a theta^a_m = delta^l_m
template <class S>
CheckResult check_duality(const Calculus<S>& C, const Frame<S>& F);
// Rhat^{ab}_{cd} theta^d_j theta^c_i = theta^b_l theta^a_k Rhat^{kl}_{ij}
template <class S>
CheckResult check_rtheta(const Algebra<S>& A, const MatrixData<S>& d, const Frame<S>& F);
// star-link mode: lambda_a^* = -g^{ab} lambdabar_b and (theta^a)^* = thetabar^b g_{ba}
template <class S>
CheckResult check_star_link(const Calculus<S>& C, const Calculus<S>& Cb, const FramePair<S>& P);
// left coefficients of df equal (e_a f) phi(L)^a_i Lambda^{-+1} on random f
template <class S>
CheckResult check_partial_link(const Calculus<S>& C, const Frame<S>& F, int samples, unsigned seed);

}  // namespace qe
