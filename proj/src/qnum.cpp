#include "qeuclid/qnum.hpp"

#include <stdexcept>

namespace qe {

std::shared_ptr<const QPoint> QPoint::make(const mpq_class& q) {
    if (q <= 0) throw std::domain_error("QPoint: q must be positive");
    auto p = std::make_shared<QPoint>();
    p->q = q;
    p->q.canonicalize();
    mpz_class n = p->q.get_num(), d = p->q.get_den();
    if (mpz_perfect_square_p(n.get_mpz_t()) && mpz_perfect_square_p(d.get_mpz_t())) {
        mpz_class rn, rd;
        mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
        mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
        p->rational_s = true;
        p->s = mpq_class(rn, rd);
        p->s.canonicalize();
    }
    return p;
}

QNum::QNum(const mpq_class& a, const mpq_class& b, const QPoint* pt) : a_(a), b_(b), pt_(pt) {
    a_.canonicalize();
    b_.canonicalize();
    fold();
}

void QNum::fold() {
    if (b_ != 0 && pt_ && pt_->rational_s) {
        a_ += b_ * pt_->s;
        b_ = 0;
    }
}

QNum QNum::operator-() const {
    QNum r = *this;
    r.a_ = -r.a_;
    r.b_ = -r.b_;
    return r;
}

QNum& QNum::operator+=(const QNum& o) {
    a_ += o.a_;
    b_ += o.b_;
    if (!pt_) pt_ = o.pt_;
    return *this;
}

QNum& QNum::operator-=(const QNum& o) {
    a_ -= o.a_;
    b_ -= o.b_;
    if (!pt_) pt_ = o.pt_;
    return *this;
}

QNum& QNum::operator*=(const QNum& o) {
    const QPoint* pt = pt_ ? pt_ : o.pt_;
    if (b_ == 0 && o.b_ == 0) {
        a_ *= o.a_;
    } else {
        if (!pt) throw std::logic_error("QNum: irrational part without a point");
        mpq_class na = a_ * o.a_ + b_ * o.b_ * pt->q;
        mpq_class nb = a_ * o.b_ + b_ * o.a_;
        a_ = na;
        b_ = nb;
    }
    pt_ = pt;
    return *this;
}

QNum QNum::inv() const {
    if (is_zero()) throw std::domain_error("QNum: inverse of zero");
    if (b_ == 0) {
        QNum r = *this;
        r.a_ = 1 / a_;
        return r;
    }
    mpq_class norm = a_ * a_ - b_ * b_ * pt_->q;
    return QNum(a_ / norm, -b_ / norm, pt_);
}

std::string QNum::str() const {
    if (b_ == 0) return a_.get_str();
    std::string r = "(";
    if (a_ != 0) r += a_.get_str() + (b_ > 0 ? "+" : "");
    r += b_.get_str() + "*s)";
    return r;
}

size_t QNum::hash() const {
    return std::hash<std::string>{}(a_.get_str()) * 31 + std::hash<std::string>{}(b_.get_str());
}

}  // namespace qe
