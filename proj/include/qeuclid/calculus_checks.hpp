#pragma once

#include "qeuclid/calculus.hpp"
#include "qeuclid/report.hpp"

namespace qe {

template <class S>
CheckResult check_dirac(const Calculus<S>& C);
template <class S>
CheckResult check_xixi(const Calculus<S>& C);
template <class S>
CheckResult check_transport(const Calculus<S>& C);
template <class S>
CheckResult check_bimodule(const Calculus<S>& C, int samples, unsigned seed);
template <class S>
CheckResult check_leibniz(const Calculus<S>& C, int pairs, unsigned seed);
// theta^* = -thetabar and (xi^i)^* = xibar^j g_{ji}, involutive
template <class S>
CheckResult check_star_forms(const Calculus<S>& C, const Calculus<S>& Cb);
// -[theta, Lambda], reported only
template <class S>
CheckResult check_d_lambda(const Calculus<S>& C);

}  // namespace qe
