#pragma once

#include <stdexcept>
#include <string>

#include "qeuclid/calculus.hpp"

namespace qe {

// Expression grammar used by `qeuclid eval`:
//
//   expr    := ['+'|'-'] term (('+'|'-') term)*
//   term    := factor (['*'|'/'] factor)*        juxtaposition multiplies
//   factor  := primary ['^' int]
//   primary := int | s | q | h | k | L | Kap | x{i} | r{j} | xi{i} | bxi{i}
//            | d(expr) | bd(expr) | '(' expr ')'
//
// x1 and x-1 are accepted for x{1} and x{-1}. s = q^{1/2}, h = s - 1/s,
// k = q - 1/q. Division is by scalars only; negative powers only of scalars
// and single generators.
struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, size_t pos)
        : std::runtime_error(msg + " at position " + std::to_string(pos)), pos(pos) {}
    size_t pos;
};

template <class S>
struct Value {
    enum class Kind { elem, form, two_form };
    Kind kind = Kind::elem;
    Elem<S> e;
    OneForm<S> w;
    TwoForm<S> t;
    Calc calc() const { return kind == Kind::form ? w.calc() : t.calc(); }
    bool operator==(const Value& o) const;
};

template <class S>
class ExprParser {
public:
    ExprParser(const Algebra<S>& A, const Calculus<S>& C, const Calculus<S>& Cb) : A_(A), C_(C), Cb_(Cb) {}

    Value<S> parse(const std::string& text) const;
    std::string print(const Value<S>& v) const;
    const Algebra<S>& algebra() const { return A_; }
    const Calculus<S>& calc(Calc c) const { return c == Calc::unbarred ? C_ : Cb_; }

private:
    const Algebra<S>& A_;
    const Calculus<S>& C_;
    const Calculus<S>& Cb_;
};

}  // namespace qe
