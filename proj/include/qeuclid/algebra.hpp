#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qeuclid/field.hpp"
#include "qeuclid/model.hpp"

namespace qe {

inline constexpr int kMaxGen = 24;

// Exponent vector over the generator slots
//   Lambda, K, r_1..r_n, x^{-n}..x^{n}
// which is also the normal order. K is only used for N even, x^0 only for N
// odd. x^0 (N odd) and x^1 (N even) take integer exponents; x^{-1} (N even)
// never appears because it is rewritten as r_1^2 (x^1)^{-1} / 2.
struct Mono {
    std::array<int8_t, kMaxGen> e{};
    auto operator<=>(const Mono&) const = default;
    bool is_one() const { return *this == Mono{}; }
};

struct MonoHash {
    size_t operator()(const Mono& m) const;
};

struct MonoPairHash {
    size_t operator()(const std::pair<Mono, Mono>& p) const;
};

template <class S>
class Elem {
public:
    using Coef = Field<S>;
    using Map = std::map<Mono, Coef>;

    Elem() = default;
    Elem(const Coef& c);  // NOLINT
    Elem(const Mono& m, const Coef& c);

    const Map& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    size_t size() const { return t_.size(); }
    Coef coeff(const Mono& m) const;
    bool is_scalar() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first.is_one()); }
    Coef scalar() const;

    void add_term(const Mono& m, const Coef& c);
    Elem& operator+=(const Elem& o);
    Elem& operator-=(const Elem& o);
    Elem& operator*=(const Coef& c);
    Elem operator-() const;
    friend Elem operator+(Elem a, const Elem& b) { return a += b; }
    friend Elem operator-(Elem a, const Elem& b) { return a -= b; }
    friend Elem operator*(Elem a, const Coef& c) { return a *= c; }
    friend Elem operator*(const Coef& c, Elem a) { return a *= c; }
    bool operator==(const Elem& o) const;
    bool operator!=(const Elem& o) const { return !(*this == o); }

    template <class F>
    Elem map_coeffs(F&& f) const {
        Elem r;
        for (const auto& [m, c] : t_) r.add_term(m, f(c));
        return r;
    }

private:
    Map t_;
};

// The extended algebra A_N with its normal-ordering multiplication.
template <class S>
class Algebra {
public:
    using E = Elem<S>;
    using Coef = Field<S>;

    explicit Algebra(Model<S> m);

    const Model<S>& model() const { return m_; }
    int N() const { return m_.N(); }
    int n() const { return m_.n(); }
    bool odd() const { return m_.odd(); }

    // slots
    int num_slots() const { return 3 + 3 * m_.n(); }
    static constexpr int slot_L() { return 0; }
    static constexpr int slot_K() { return 1; }
    int slot_r(int j) const { return 1 + j; }  // j = 1..n; r_0 is x^0 for N odd
    int slot_x(int i) const { return 2 + m_.n() + (i + m_.n()); }
    bool is_r(int slot) const { return slot >= 2 && slot < 2 + m_.n(); }
    bool is_x(int slot) const { return slot >= 2 + m_.n(); }
    int r_index(int slot) const { return slot - 1; }
    int x_index(int slot) const { return slot - 2 - 2 * m_.n(); }
    bool slot_used(int slot) const;
    bool invertible(int slot) const;
    std::string slot_name(int slot) const;

    // constructors
    E one() const { return E(Coef(1)); }
    E scalar(const Coef& c) const { return E(c); }
    E x(int i, int e = 1) const;
    E r(int j, int e = 1) const;  // r_0 means x^0 (N odd)
    E L(int e = 1) const { return gen(slot_L(), e); }
    E K(int e = 1) const;
    E gen(int slot, int e = 1) const;
    E r2(int j) const;  // r_j^2, with r_0^2 = (x^0)^2 for N odd

    E mul(const E& a, const E& b) const;
    E mul_mono(const Mono& a, const Mono& b) const;
    E comm(const E& a, const E& b) const { return mul(a, b) - mul(b, a); }
    E pow(const E& a, int e) const;

    // x^{-i} x^i and x^i x^{-i} (i >= 1) in terms of r_i^2, r_{i-1}^2
    const E& phi(int i) const { return phi_[i]; }
    const E& psi(int i) const { return psi_[i]; }

    // q-exponent c with A B = q^c B A, A in a later slot than B
    int chi(int later, int earlier) const;

    std::optional<int> grading(const E& a, int i) const;  // nullopt: mixed
    int mono_grading(const Mono& m, int i) const;

    E star(const E& a) const;
    E embed_into(const Algebra& big, const E& a) const;  // big.N() = N + 2k

    std::string mono_str(const Mono& m) const;
    std::string str(const E& a) const;

    size_t cache_size() const;

private:
    E mul_gen(const Mono& m, int slot, int e) const;
    E mul_elem_gen(const E& a, int slot, int e) const;
    E mul_elem_mono(const E& a, const Mono& m) const;
    E star_gen(int slot, int e) const;
    S sp(int e) const { return m_.s(e); }

    Model<S> m_;
    std::vector<E> phi_, psi_;
    mutable std::shared_mutex mu_;
    mutable std::unordered_map<std::pair<Mono, Mono>, E, MonoPairHash> cache_;
};

}  // namespace qe
