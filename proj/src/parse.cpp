#include "qeuclid/parse.hpp"

#include <cctype>

namespace qe {

template <class S>
bool Value<S>::operator==(const Value& o) const {
    if (kind != o.kind) return false;
    switch (kind) {
        case Kind::elem: return e == o.e;
        case Kind::form: return w == o.w;
        case Kind::two_form: return t == o.t;
    }
    return false;
}

namespace {

template <class S>
class State {
public:
    using V = Value<S>;
    using E = Elem<S>;

    State(const ExprParser<S>& P, const std::string& text) : P_(P), A_(P.algebra()), s_(text) {}

    V run() {
        V v = expr();
        skip();
        if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, i_); }
    [[noreturn]] void fail_at(const std::string& msg, size_t pos) const { throw ParseError(msg, pos); }

    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool peek(char c) {
        skip();
        return i_ < s_.size() && s_[i_] == c;
    }
    bool eat(char c) {
        if (!peek(c)) return false;
        ++i_;
        return true;
    }
    void expect(char c) {
        if (!eat(c)) fail(std::string("expected '") + c + "'");
    }

    long read_int(bool allow_sign) {
        skip();
        size_t start = i_;
        bool neg = false;
        if (allow_sign && i_ < s_.size() && (s_[i_] == '-' || s_[i_] == '+')) neg = s_[i_++] == '-';
        size_t digits = i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
        if (digits == i_) fail_at("expected an integer", start);
        if (i_ - digits > 9) fail_at("integer too large", start);
        long v = std::stol(s_.substr(digits, i_ - digits));
        return neg ? -v : v;
    }

    // index after x, r, xi, bxi: {i}, or a signed integer written directly
    int read_index() {
        if (i_ < s_.size() && s_[i_] == '{') {
            ++i_;
            int v = static_cast<int>(read_int(true));
            expect('}');
            return v;
        }
        if (i_ < s_.size() && (s_[i_] == '-' || std::isdigit(static_cast<unsigned char>(s_[i_]))))
            return static_cast<int>(read_int(true));
        fail("expected an index");
    }

    V elem(E e) {
        V v;
        v.e = std::move(e);
        return v;
    }
    V scalar(const S& c) { return elem(E(Field<S>(c))); }

    static bool starts_primary(char c) {
        return std::isalpha(static_cast<unsigned char>(c)) || std::isdigit(static_cast<unsigned char>(c)) || c == '(';
    }

    V expr() {
        V acc;
        bool first = true;
        for (;;) {
            skip();
            size_t pos = i_;
            int sign = 1;
            if (eat('+')) sign = 1;
            else if (eat('-')) sign = -1;
            else if (!first) break;
            V t = term();
            if (sign < 0) t = negate(t);
            acc = first ? std::move(t) : add(acc, t, pos);
            first = false;
        }
        return acc;
    }

    V term() {
        V acc = factor();
        for (;;) {
            skip();
            size_t pos = i_;
            if (eat('*')) acc = mul(acc, factor(), pos);
            else if (eat('/')) acc = divide(acc, factor(), pos);
            else if (i_ < s_.size() && starts_primary(s_[i_])) acc = mul(acc, factor(), pos);
            else break;
        }
        return acc;
    }

    V factor() {
        skip();
        size_t pos = i_;
        V b = primary();
        if (!eat('^')) return b;
        long e = read_int(true);
        if (b.kind != V::Kind::elem) fail_at("powers of forms are not defined", pos);
        return elem(power(b.e, static_cast<int>(e), pos));
    }

    E power(const E& b, int e, size_t pos) {
        if (e >= 0) return A_.pow(b, e);
        if (b.is_scalar()) {
            if (b.is_zero()) fail_at("division by zero", pos);
            return A_.pow(E(b.scalar().inv()), -e);
        }
        if (b.size() == 1) {
            const auto& [m, c] = *b.terms().begin();
            int slot = -1, count = 0;
            for (int g = 0; g < A_.num_slots(); ++g)
                if (m.e[g]) {
                    slot = g;
                    count += m.e[g] == 1 ? 1 : 2;
                }
            if (count == 1) {
                Field<S> ci = c.inv();
                Field<S> cp(1);
                for (int t = 0; t < -e; ++t) cp *= ci;
                return A_.gen(slot, e) * cp;
            }
        }
        fail_at("negative powers are defined only for scalars and single generators", pos);
    }

    V primary() {
        skip();
        size_t pos = i_;
        if (i_ >= s_.size()) fail("unexpected end of input");
        char c = s_[i_];
        if (c == '(') {
            ++i_;
            V v = expr();
            expect(')');
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = i_;
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
            return scalar(A_.model().rational(mpq_class(mpz_class(s_.substr(start, i_ - start)))));
        }
        if (!std::isalpha(static_cast<unsigned char>(c))) fail("unexpected '" + std::string(1, c) + "'");
        size_t start = i_;
        while (i_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[i_]))) ++i_;
        std::string name = s_.substr(start, i_ - start);
        const auto& m = A_.model();
        if (name == "s") return scalar(m.s(1));
        if (name == "q") return scalar(m.q());
        if (name == "h") return scalar(m.h());
        if (name == "k") return scalar(m.k());
        if (name == "L") return elem(A_.L());
        if (name == "Kap") return elem(A_.K());
        if (name == "x" || name == "r") {
            int idx = read_index();
            return elem(name == "x" ? A_.x(idx) : A_.r(idx));
        }
        if (name == "xi" || name == "bxi") {
            int idx = read_index();
            V v;
            v.kind = V::Kind::form;
            v.w = P_.calc(name == "xi" ? Calc::unbarred : Calc::barred).xi(idx);
            return v;
        }
        if (name == "d" || name == "bd") {
            expect('(');
            size_t apos = i_;
            V a = expr();
            expect(')');
            if (a.kind != V::Kind::elem) fail_at("d applies to algebra elements", apos);
            V v;
            v.kind = V::Kind::form;
            v.w = P_.calc(name == "d" ? Calc::unbarred : Calc::barred).d(a.e);
            return v;
        }
        fail_at("unknown symbol '" + name + "'", pos);
    }

    V negate(V v) {
        switch (v.kind) {
            case V::Kind::elem: v.e = -v.e; break;
            case V::Kind::form: v.w *= Field<S>(-1); break;
            case V::Kind::two_form: v.t = TwoForm<S>(v.t.calc()) - v.t; break;
        }
        return v;
    }

    V add(V a, const V& b, size_t pos) {
        if (a.kind == V::Kind::elem && b.kind == V::Kind::elem) {
            a.e += b.e;
            return a;
        }
        // zero scalars absorb into forms
        if (a.kind == V::Kind::elem && a.e.is_zero()) return b;
        if (b.kind == V::Kind::elem && b.e.is_zero()) return a;
        if (a.kind != b.kind) fail_at("cannot add objects of different degree", pos);
        if (a.calc() != b.calc() && !(a.kind == V::Kind::form ? a.w.is_zero() || b.w.is_zero()
                                                             : a.t.is_zero() || b.t.is_zero()))
            fail_at("cannot add forms of the two calculi", pos);
        if (a.kind == V::Kind::form) a.w += b.w;
        else a.t += b.t;
        return a;
    }

    V mul(const V& a, const V& b, size_t pos) {
        using K = typename V::Kind;
        V r;
        if (a.kind == K::elem && b.kind == K::elem) return elem(A_.mul(a.e, b.e));
        if (a.kind == K::elem && b.kind == K::form) {
            r.kind = K::form;
            r.w = P_.calc(b.w.calc()).lmul(a.e, b.w);
            return r;
        }
        if (a.kind == K::form && b.kind == K::elem) {
            r.kind = K::form;
            r.w = P_.calc(a.w.calc()).rmul(a.w, b.e);
            return r;
        }
        if (a.kind == K::elem && b.kind == K::two_form) {
            r.kind = K::two_form;
            r.t = P_.calc(b.t.calc()).lmul(a.e, b.t);
            return r;
        }
        if (a.kind == K::form && b.kind == K::form) {
            if (a.w.calc() != b.w.calc() && !a.w.is_zero() && !b.w.is_zero())
                fail_at("cannot multiply forms of the two calculi", pos);
            r.kind = K::two_form;
            r.t = P_.calc(a.w.calc()).wedge(a.w, b.w);
            return r;
        }
        fail_at("product not supported for these degrees", pos);
    }

    V divide(const V& a, const V& b, size_t pos) {
        if (b.kind != V::Kind::elem || !b.e.is_scalar()) fail_at("division only by scalars", pos);
        if (b.e.is_zero()) fail_at("division by zero", pos);
        return mul(a, elem(E(b.e.scalar().inv())), pos);
    }

    const ExprParser<S>& P_;
    const Algebra<S>& A_;
    const std::string& s_;
    size_t i_ = 0;
};

}  // namespace

template <class S>
Value<S> ExprParser<S>::parse(const std::string& text) const {
    return State<S>(*this, text).run();
}

template <class S>
std::string ExprParser<S>::print(const Value<S>& v) const {
    switch (v.kind) {
        case Value<S>::Kind::elem: return A_.str(v.e);
        case Value<S>::Kind::form: return calc(v.w.calc()).str(v.w);
        case Value<S>::Kind::two_form: return calc(v.t.calc()).str(v.t);
    }
    return {};
}

template struct Value<RatFunc>;
template struct Value<QNum>;
template class ExprParser<RatFunc>;
template class ExprParser<QNum>;

}  // namespace qe
