#include "qeuclid/field.hpp"

#include <algorithm>
#include <stdexcept>

namespace qe {

QNum Scalars<QNum>::spow(int e) const {
    const QPoint* p = pt_.get();
    if (p->rational_s) {
        mpq_class r(1);
        mpq_class base = e >= 0 ? p->s : mpq_class(1 / p->s);
        for (int i = 0; i < (e >= 0 ? e : -e); ++i) r *= base;
        return QNum(r);
    }
    // s^e = q^{e div 2} * s^{e mod 2}
    int half = e >= 0 ? e / 2 : -((-e + 1) / 2);
    int odd = e - 2 * half;
    mpq_class qq(1);
    mpq_class base = half >= 0 ? p->q : mpq_class(1 / p->q);
    for (int i = 0; i < (half >= 0 ? half : -half); ++i) qq *= base;
    if (odd == 0) return QNum(qq, 0, p);
    return QNum(0, qq, p);
}

std::string radmono_str(const RadMono& m, const std::vector<std::string>& names) {
    std::string r;
    for (int k = 0; k < kMaxRad; ++k) {
        if (m[k] == 0) continue;
        if (!r.empty()) r += " ";
        r += k < static_cast<int>(names.size()) ? names[k] : "g?" + std::to_string(k);
        if (m[k] != 1) r += "^" + std::to_string(m[k]);
    }
    return r;
}

template <class S>
Field<S>::Field(long v) {
    if (v != 0) t_.emplace_back(RadMono{}, S(v));
}

template <class S>
Field<S>::Field(const S& v) {
    if (!v.is_zero()) t_.emplace_back(RadMono{}, v);
}

template <class S>
Field<S> Field<S>::symbol(const RadicalRules<S>* rules, int k, int exp) {
    if (!rules || k < 0 || k >= rules->nsym) throw std::out_of_range("Field::symbol: bad radical index");
    Field f(1);
    f.rules_ = rules;
    f.t_[0].first[k] = 1;
    if (exp == 1) return f;
    Field r(1);
    r.rules_ = rules;
    Field base = exp >= 0 ? f : f.inv();
    for (int i = 0; i < (exp >= 0 ? exp : -exp); ++i) r *= base;
    return r;
}

template <class S>
bool Field<S>::is_scalar() const {
    return t_.empty() || (t_.size() == 1 && t_[0].first == RadMono{});
}

template <class S>
S Field<S>::scalar() const {
    if (!is_scalar()) throw std::logic_error("Field::scalar: radical part present");
    return t_.empty() ? S(0) : t_[0].second;
}

template <class S>
void Field<S>::canon(std::vector<Term>& v) {
    std::sort(v.begin(), v.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
    std::vector<Term> out;
    out.reserve(v.size());
    for (auto& t : v) {
        if (!out.empty() && out.back().first == t.first)
            out.back().second += t.second;
        else
            out.push_back(std::move(t));
    }
    out.erase(std::remove_if(out.begin(), out.end(), [](const Term& t) { return t.second.is_zero(); }),
              out.end());
    t_ = std::move(out);
}

template <class S>
Field<S> Field<S>::operator-() const {
    Field r = *this;
    for (auto& t : r.t_) t.second = -t.second;
    return r;
}

template <class S>
Field<S>& Field<S>::operator+=(const Field& o) {
    if (!rules_) rules_ = o.rules_;
    if (o.t_.empty()) return *this;
    if (t_.empty()) {
        t_ = o.t_;
        return *this;
    }
    if (t_.size() == 1 && o.t_.size() == 1 && t_[0].first == o.t_[0].first) {
        t_[0].second += o.t_[0].second;
        if (t_[0].second.is_zero()) t_.clear();
        return *this;
    }
    std::vector<Term> v = t_;
    v.insert(v.end(), o.t_.begin(), o.t_.end());
    canon(v);
    return *this;
}

template <class S>
Field<S>& Field<S>::operator-=(const Field& o) {
    return *this += -o;
}

template <class S>
Field<S> Field<S>::mul(const Field& a, const Field& b) {
    Field r;
    r.rules_ = a.rules_ ? a.rules_ : b.rules_;
    if (a.t_.empty() || b.t_.empty()) return r;
    if (a.t_.size() == 1 && b.t_.size() == 1 && a.t_[0].first == RadMono{}) {
        S c = a.t_[0].second * b.t_[0].second;
        if (!c.is_zero()) r.t_.emplace_back(b.t_[0].first, std::move(c));
        return r;
    }
    if (a.t_.size() == 1 && b.t_.size() == 1 && b.t_[0].first == RadMono{}) {
        S c = a.t_[0].second * b.t_[0].second;
        if (!c.is_zero()) r.t_.emplace_back(a.t_[0].first, std::move(c));
        return r;
    }
    const RadicalRules<S>* rules = r.rules_;
    std::vector<Term> v;
    v.reserve(a.t_.size() * b.t_.size());
    for (const auto& [ma, ca] : a.t_) {
        for (const auto& [mb, cb] : b.t_) {
            RadMono m{};
            S c = ca * cb;
            for (int k = 0; k < kMaxRad; ++k) {
                int e = ma[k] + mb[k];
                if (rules && rules->squared) {
                    while (e >= 2) {
                        c *= rules->square[k];
                        e -= 2;
                    }
                }
                if (e > 127 || e < -127) throw std::overflow_error("Field: radical exponent overflow");
                m[k] = static_cast<int8_t>(e);
            }
            v.emplace_back(m, std::move(c));
        }
    }
    r.canon(v);
    return r;
}

template <class S>
Field<S>& Field<S>::operator*=(const Field& o) {
    *this = mul(*this, o);
    return *this;
}

template <class S>
bool Field<S>::operator==(const Field& o) const {
    if (t_.size() != o.t_.size()) return false;
    for (size_t i = 0; i < t_.size(); ++i)
        if (t_[i].first != o.t_[i].first || t_[i].second != o.t_[i].second) return false;
    return true;
}

template <class S>
Field<S> Field<S>::inv() const {
    if (t_.empty()) throw std::domain_error("Field: division by zero");
    if (t_.size() != 1) throw std::domain_error("Field: division by a mixed radical element");
    Field r;
    r.rules_ = rules_;
    RadMono m{};
    S c = t_[0].second.inv();
    for (int k = 0; k < kMaxRad; ++k) {
        int e = t_[0].first[k];
        if (e == 0) continue;
        if (rules_ && rules_->squared) {
            // gamma^{-1} = gamma / gamma^2
            c /= rules_->square[k];
            m[k] = static_cast<int8_t>(e);
        } else {
            m[k] = static_cast<int8_t>(-e);
        }
    }
    r.t_.emplace_back(m, std::move(c));
    return r;
}

template <class S>
Field<S> Field<S>::star() const {
    if (is_scalar()) return *this;
    if (!rules_ || rules_->conj.empty())
        throw std::logic_error("Field::star: conjugation of radical symbols is not defined in this mode");
    std::vector<Term> v;
    for (const auto& [m, c] : t_) {
        RadMono mm{};
        for (int k = 0; k < rules_->nsym; ++k) mm[rules_->conj[k]] = m[k];
        v.emplace_back(mm, c);
    }
    Field r;
    r.rules_ = rules_;
    r.canon(v);
    return r;
}

template <class S>
std::string Field<S>::str() const {
    if (t_.empty()) return "0";
    static const std::vector<std::string> none;
    const auto& names = rules_ ? rules_->names : none;
    std::string r;
    for (size_t i = 0; i < t_.size(); ++i) {
        if (i) r += " + ";
        const auto& [m, c] = t_[i];
        std::string cs = c.str();
        if (m == RadMono{}) {
            r += cs;
        } else {
            if (cs != "1") r += cs + " ";
            r += radmono_str(m, names);
        }
    }
    return t_.size() > 1 ? "(" + r + ")" : r;
}

template <class S>
size_t Field<S>::hash() const {
    size_t h = 7;
    for (const auto& [m, c] : t_) {
        for (auto e : m) h = h * 131 + static_cast<size_t>(e + 128);
        h = h * 1000003 ^ c.hash();
    }
    return h;
}

template class Field<RatFunc>;
template class Field<QNum>;

}  // namespace qe
