#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>

#include "qeuclid/algebra.hpp"

namespace qe {

enum class Calc { unbarred, barred };
enum class RadMode { transcendental, theorem3, star_link };

std::string to_string(Calc c);
std::string to_string(RadMode m);

// Normalization constants gamma_a (unbarred) and gammabar_a (barred).
//
// transcendental: gamma_a, gammabar_a free Laurent symbols for a >= 1
//   (names g1.., gb1..), gamma_{-a} = P_a / gamma_a.
// theorem3 (N odd): symbols g1..gn with fixed squares, gamma_{-a} = q gamma_a,
//   gammabar_a = -q gamma_a.
// star_link: symbols g1..gn and their conjugates gs1..gsn, barred constants
//   expressed through the conjugates so that lambda_a^* = -g^{ab} lambdabar_b.
template <class S>
struct Gammas {
    RadMode mode = RadMode::transcendental;
    std::shared_ptr<const RadicalRules<S>> rules;  // null when radical-free
    std::map<int, Field<S>> g, gb;
    const std::map<int, Field<S>>& of(Calc c) const { return c == Calc::unbarred ? g : gb; }
};

// gamma_a gamma_{-a} for a >= 1, and gamma_0 itself for a = 0 (N odd).
template <class S>
S gamma_product(const Model<S>& m, Calc c, int a);

template <class S>
Gammas<S> make_gammas(const Model<S>& m, RadMode mode);

// Radical-free choice gamma_a = 1 (a >= 1), used where only gamma-independent
// quantities are needed.
template <class S>
Gammas<S> reference_gammas(const Model<S>& m);

// lambda_a, e^i_a = [lambda_a, x^i] and the frame coefficients theta^a_l.
template <class S>
struct Frame {
    Calc calc = Calc::unbarred;
    RadMode mode = RadMode::transcendental;
    std::map<int, Elem<S>> lambda;
    std::map<std::pair<int, int>, Elem<S>> e;      // (i, a)
    std::map<std::pair<int, int>, Elem<S>> theta;  // (a, l)
    const Elem<S>& E(int i, int a) const { return get(e, {i, a}); }
    const Elem<S>& Th(int a, int l) const { return get(theta, {a, l}); }

private:
    static const Elem<S>& get(const std::map<std::pair<int, int>, Elem<S>>& m, std::pair<int, int> k) {
        static const Elem<S> zero;
        auto it = m.find(k);
        return it == m.end() ? zero : it->second;
    }
};

template <class S>
Elem<S> build_lambda(const Algebra<S>& A, Calc c, int a, const Field<S>& gamma);

template <class S>
Frame<S> build_frame(const Algebra<S>& A, Calc c, const std::map<int, Field<S>>& gamma);

}  // namespace qe
