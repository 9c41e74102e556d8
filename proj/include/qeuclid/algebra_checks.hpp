#pragma once

#include <random>

#include "qeuclid/algebra.hpp"
#include "qeuclid/report.hpp"
#include "qeuclid/rmatrix.hpp"

namespace qe {

struct WordOptions {
    bool dilatator = true;  // allow Lambda and K
    bool radii = true;      // allow r_j^{+-1}
    int max_len = 3;
    int max_terms = 2;
};

// Random element: a short sum of random generator words with small scalar
// coefficients, normalized.
template <class S>
Elem<S> random_element(const Algebra<S>& A, std::mt19937& rng, const WordOptions& opt = {});

// Random word as an explicit generator sequence (slot, exponent).
template <class S>
std::vector<std::pair<int, int>> random_word(const Algebra<S>& A, std::mt19937& rng, const WordOptions& opt);

// Product of a generator sequence, folded in the given bracketing order.
enum class Fold { left, right, random };
template <class S>
Elem<S> word_product(const Algebra<S>& A, const std::vector<std::pair<int, int>>& w, Fold f, std::mt19937& rng);

template <class S>
CheckResult check_xrel(const MatrixData<S>& d, const Algebra<S>& A);
template <class S>
CheckResult check_explicitx(const Algebra<S>& A);
template <class S>
CheckResult check_generator_rel(const Algebra<S>& A);
template <class S>
CheckResult check_defr(const Algebra<S>& A);
template <class S>
CheckResult check_center(const Algebra<S>& A);
template <class S>
CheckResult check_rutil1(const Algebra<S>& A);
template <class S>
CheckResult check_rutil2(const Algebra<S>& A);
template <class S>
CheckResult check_confluence(const Algebra<S>& A, int triples, unsigned seed);
template <class S>
CheckResult check_grading(const Algebra<S>& A, int words, unsigned seed);
template <class S>
CheckResult check_star_alg(const Algebra<S>& A, int pairs, unsigned seed);
template <class S>
CheckResult check_embed(const Algebra<S>& small, const Algebra<S>& big, int words, unsigned seed);

}  // namespace qe
