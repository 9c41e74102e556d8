#pragma once

#include <gmpxx.h>

#include <memory>
#include <string>

namespace qe {

// Numeric point q = s^2 with q a positive rational. When q is a perfect
// square s itself is rational and every QNum collapses to its rational part.
struct QPoint {
    mpq_class q;
    bool rational_s = false;
    mpq_class s;  // valid when rational_s

    static std::shared_ptr<const QPoint> make(const mpq_class& q);
};

// Element a + b*s of Q(s), s^2 = q.
class QNum {
public:
    QNum() = default;
    QNum(long v) : a_(v) {}  // NOLINT
    explicit QNum(const mpq_class& a) : a_(a) { a_.canonicalize(); }
    QNum(const mpq_class& a, const mpq_class& b, const QPoint* pt);

    const mpq_class& a() const { return a_; }
    const mpq_class& b() const { return b_; }
    const QPoint* point() const { return pt_; }

    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_one() const { return a_ == 1 && b_ == 0; }
    bool is_rational() const { return b_ == 0; }

    QNum operator-() const;
    QNum& operator+=(const QNum& o);
    QNum& operator-=(const QNum& o);
    QNum& operator*=(const QNum& o);
    QNum& operator/=(const QNum& o) { return *this *= o.inv(); }
    friend QNum operator+(QNum x, const QNum& y) { return x += y; }
    friend QNum operator-(QNum x, const QNum& y) { return x -= y; }
    friend QNum operator*(QNum x, const QNum& y) { return x *= y; }
    friend QNum operator/(QNum x, const QNum& y) { return x /= y; }
    bool operator==(const QNum& o) const { return a_ == o.a_ && b_ == o.b_; }
    bool operator!=(const QNum& o) const { return !(*this == o); }

    QNum inv() const;
    std::string str() const;
    size_t hash() const;

private:
    void fold();
    mpq_class a_, b_;
    const QPoint* pt_ = nullptr;
};

}  // namespace qe
