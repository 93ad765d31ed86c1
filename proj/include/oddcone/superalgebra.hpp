#pragma once

#include "linalg.hpp"
#include "matrix.hpp"

#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace oddcone {

// The classical families, realized inside an ambient gl(M|N).
//   gl(m|n), sl(m|n)        ambient (m, n)
//   osp(2m+1|2n)            ambient (2m+1, 2n), symmetric form on the even
//                           part, alternating form on the odd part
//   osp(2m|2n)              ambient (2m, 2n)
//   q(n), p(n)              ambient (n, n)
enum class Family { GL, SL, OSP_ODD, OSP_EVEN, Q, P };

struct Kind {
    Family family = Family::GL;
    int p1 = 0, p2 = 0;

    static Kind gl(int m, int n) { return make(Family::GL, m, n); }
    static Kind sl(int m, int n) { return make(Family::SL, m, n); }
    static Kind osp_odd(int m, int n) { return make(Family::OSP_ODD, m, n); }
    static Kind osp_even(int m, int n) { return make(Family::OSP_EVEN, m, n); }
    static Kind q(int n) { return make(Family::Q, n, 0); }
    static Kind p(int n) { return make(Family::P, n, 0); }

    int ambient_m() const {
        switch (family) {
            case Family::GL:
            case Family::SL: return p1;
            case Family::OSP_ODD: return 2 * p1 + 1;
            case Family::OSP_EVEN: return 2 * p1;
            case Family::Q:
            case Family::P: return p1;
        }
        return 0;
    }
    int ambient_n() const {
        switch (family) {
            case Family::GL:
            case Family::SL: return p2;
            case Family::OSP_ODD:
            case Family::OSP_EVEN: return 2 * p2;
            case Family::Q:
            case Family::P: return p1;
        }
        return 0;
    }

    std::string str() const {
        std::ostringstream os;
        switch (family) {
            case Family::GL: os << "gl(" << p1 << "|" << p2 << ")"; break;
            case Family::SL: os << "sl(" << p1 << "|" << p2 << ")"; break;
            case Family::OSP_ODD:
            case Family::OSP_EVEN:
                os << "osp(" << ambient_m() << "|" << ambient_n() << ")";
                break;
            case Family::Q: os << "q(" << p1 << ")"; break;
            case Family::P: os << "p(" << p1 << ")"; break;
        }
        return os.str();
    }

    // Inverse of str(): "gl(2|3)", "sl(2|3)", "osp(5|4)", "q(3)", "p(4)".
    static Kind parse(const std::string& s) {
        auto fail = [&]() -> Kind {
            throw std::invalid_argument("Kind::parse: bad kind '" + s + "'");
        };
        size_t lp = s.find('(');
        if (lp == std::string::npos || s.empty() || s.back() != ')') return fail();
        std::string name = s.substr(0, lp);
        std::string args = s.substr(lp + 1, s.size() - lp - 2);
        auto to_int = [&](const std::string& t) {
            if (t.empty() || t.size() > 6) fail();
            for (char c : t)
                if (c < '0' || c > '9') fail();
            return std::stoi(t);
        };
        if (name == "q" || name == "p") {
            int n = to_int(args);
            if (n < 1) fail();
            return name == "q" ? q(n) : p(n);
        }
        size_t bar = args.find('|');
        if (bar == std::string::npos) fail();
        int a = to_int(args.substr(0, bar));
        int b = to_int(args.substr(bar + 1));
        if (name == "gl" || name == "sl") {
            if (a < 1 || b < 1) fail();
            return name == "gl" ? gl(a, b) : sl(a, b);
        }
        if (name == "osp") {
            if (b < 2 || b % 2 != 0 || a < 1) fail();
            return a % 2 ? osp_odd((a - 1) / 2, b / 2) : osp_even(a / 2, b / 2);
        }
        return fail();
    }

    friend bool operator==(const Kind& x, const Kind& y) {
        return x.family == y.family && x.p1 == y.p1 && x.p2 == y.p2;
    }

private:
    static Kind make(Family f, int a, int b) {
        if (a < 0 || b < 0) throw std::invalid_argument("Kind: negative parameter");
        Kind k;
        k.family = f;
        k.p1 = a;
        k.p2 = b;
        return k;
    }
};

// Odd element of gl(m|n): the pair of off-diagonal blocks.
struct OddElement {
    int m = 0, n = 0;
    Matrix xplus;   // m x n
    Matrix xminus;  // n x m

    OddElement() = default;
    OddElement(int m_, int n_, Matrix xp, Matrix xm)
        : m(m_), n(n_), xplus(std::move(xp)), xminus(std::move(xm)) {
        if (xplus.rows() != m || xplus.cols() != n || xminus.rows() != n || xminus.cols() != m)
            throw std::invalid_argument("OddElement: block shape mismatch");
    }
    static OddElement zero(int m, int n) { return OddElement(m, n, Matrix(m, n), Matrix(n, m)); }

    bool is_zero() const { return xplus.is_zero() && xminus.is_zero(); }
    friend bool operator==(const OddElement& x, const OddElement& y) {
        return x.m == y.m && x.n == y.n && x.xplus == y.xplus && x.xminus == y.xminus;
    }
    OddElement operator+(const OddElement& o) const {
        return OddElement(m, n, xplus + o.xplus, xminus + o.xminus);
    }
    OddElement operator-(const OddElement& o) const {
        return OddElement(m, n, xplus - o.xplus, xminus - o.xminus);
    }
    OddElement operator*(const Rational& s) const {
        return OddElement(m, n, xplus * s, xminus * s);
    }
};

// Even element: the pair of diagonal blocks.
struct EvenElement {
    int m = 0, n = 0;
    Matrix a;  // m x m
    Matrix b;  // n x n

    EvenElement() = default;
    EvenElement(int m_, int n_, Matrix a_, Matrix b_)
        : m(m_), n(n_), a(std::move(a_)), b(std::move(b_)) {
        if (a.rows() != m || a.cols() != m || b.rows() != n || b.cols() != n)
            throw std::invalid_argument("EvenElement: block shape mismatch");
    }
    static EvenElement zero(int m, int n) { return EvenElement(m, n, Matrix(m, m), Matrix(n, n)); }

    bool is_zero() const { return a.is_zero() && b.is_zero(); }
    Rational supertrace() const { return a.trace() - b.trace(); }
    friend bool operator==(const EvenElement& x, const EvenElement& y) {
        return x.m == y.m && x.n == y.n && x.a == y.a && x.b == y.b;
    }
    EvenElement operator+(const EvenElement& o) const {
        return EvenElement(m, n, a + o.a, b + o.b);
    }
    EvenElement operator-(const EvenElement& o) const {
        return EvenElement(m, n, a - o.a, b - o.b);
    }
    EvenElement operator*(const Rational& s) const { return EvenElement(m, n, a * s, b * s); }
};

// Element (A, B) of GL_m x GL_n with cached inverses.
struct GroupElement {
    int m = 0, n = 0;
    Matrix A, B, Ainv, Binv;

    GroupElement() = default;
    GroupElement(Matrix A_, Matrix B_)
        : m(A_.rows()), n(B_.rows()), A(std::move(A_)), B(std::move(B_)) {
        if (!A.is_square() || !B.is_square())
            throw std::invalid_argument("GroupElement: blocks must be square");
        Ainv = inverse(A);  // throws on singular input
        Binv = inverse(B);
    }
    static GroupElement identity(int m, int n) {
        return GroupElement(Matrix::identity(m), Matrix::identity(n));
    }
    friend bool operator==(const GroupElement& x, const GroupElement& y) {
        return x.A == y.A && x.B == y.B;
    }
};

// Conjugation action on the odd part: (A, B) . (X+, X-) = (A^-1 X+ B, B^-1 X- A).
inline OddElement act(const GroupElement& g, const OddElement& x) {
    if (g.m != x.m || g.n != x.n) throw std::invalid_argument("act: dimension mismatch");
    return OddElement(x.m, x.n, g.Ainv * x.xplus * g.B, g.Binv * x.xminus * g.A);
}

// Group product with q applied first: act(compose(p, q), x) == act(p, act(q, x)).
inline GroupElement compose(const GroupElement& p, const GroupElement& q) {
    if (p.m != q.m || p.n != q.n) throw std::invalid_argument("compose: dimension mismatch");
    GroupElement r;
    r.m = p.m;
    r.n = p.n;
    r.A = q.A * p.A;
    r.B = q.B * p.B;
    r.Ainv = p.Ainv * q.Ainv;
    r.Binv = p.Binv * q.Binv;
    return r;
}

inline GroupElement inverse(const GroupElement& g) {
    GroupElement r;
    r.m = g.m;
    r.n = g.n;
    r.A = g.Ainv;
    r.B = g.Binv;
    r.Ainv = g.A;
    r.Binv = g.B;
    return r;
}

// Brackets between the diagonal and off-diagonal sectors of gl(m|n).
// Odd-odd is the anticommutator; it is symmetric in its arguments.
inline EvenElement bracket_odd(const OddElement& x, const OddElement& y) {
    if (x.m != y.m || x.n != y.n) throw std::invalid_argument("bracket_odd: dimension mismatch");
    return EvenElement(x.m, x.n, x.xplus * y.xminus + y.xplus * x.xminus,
                       x.xminus * y.xplus + y.xminus * x.xplus);
}

inline OddElement bracket_even_odd(const EvenElement& e, const OddElement& x) {
    if (e.m != x.m || e.n != x.n)
        throw std::invalid_argument("bracket_even_odd: dimension mismatch");
    return OddElement(x.m, x.n, e.a * x.xplus - x.xplus * e.b, e.b * x.xminus - x.xminus * e.a);
}

inline EvenElement bracket_even(const EvenElement& e, const EvenElement& f) {
    if (e.m != f.m || e.n != f.n) throw std::invalid_argument("bracket_even: dimension mismatch");
    return EvenElement(e.m, e.n, e.a * f.a - f.a * e.a, e.b * f.b - f.b * e.b);
}

// Tr((X+ X-)^k) for k = 1..min(m, n).  These generate the invariants that
// cut out the odd nilpotent cone: X+ X- has rank at most min(m, n), so the
// power sums up to that bound already decide nilpotency.
inline std::vector<Rational> invariants(const OddElement& x) {
    int l = std::min(x.m, x.n);
    std::vector<Rational> out;
    out.reserve(l);
    Matrix prod = x.xplus * x.xminus;
    Matrix p = prod;
    for (int k = 1; k <= l; ++k) {
        out.push_back(p.trace());
        if (k < l) p = p * prod;
    }
    return out;
}

// ---- fixed bilinear forms for the osp realization -------------------------

// Symmetric form on the even part (split, so S * S == I).
inline Matrix osp_form_s(const Kind& kind) {
    if (kind.family == Family::OSP_ODD) {
        int m = kind.p1;
        Matrix s(2 * m + 1, 2 * m + 1);
        s(0, 0) = 1;
        for (int i = 0; i < m; ++i) {
            s(1 + i, 1 + m + i) = 1;
            s(1 + m + i, 1 + i) = 1;
        }
        return s;
    }
    if (kind.family == Family::OSP_EVEN) {
        int m = kind.p1;
        Matrix s(2 * m, 2 * m);
        for (int i = 0; i < m; ++i) {
            s(i, m + i) = 1;
            s(m + i, i) = 1;
        }
        return s;
    }
    throw std::invalid_argument("osp_form_s: not an osp kind");
}

// Alternating form on the odd part; K * K == -I, so K^-1 == -K.
inline Matrix osp_form_k(const Kind& kind) {
    if (kind.family != Family::OSP_ODD && kind.family != Family::OSP_EVEN)
        throw std::invalid_argument("osp_form_k: not an osp kind");
    int n = kind.p2;
    Matrix k(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
        k(i, n + i) = 1;
        k(n + i, i) = -1;
    }
    return k;
}

namespace detail {
// X- component forced by the osp form: phi(P) = K^-1 P^t S.
inline Matrix osp_phi(const Kind& kind, const Matrix& p) {
    return -osp_form_k(kind) * p.transpose() * osp_form_s(kind);
}
// Inverse of phi: phi_inv(W) = -S W^t K  (uses S^-1 == S).
inline Matrix osp_phi_inv(const Kind& kind, const Matrix& w) {
    return -osp_form_s(kind) * w.transpose() * osp_form_k(kind);
}
}  // namespace detail

// Involution on the odd part of the ambient gl whose +1 eigenspace is the
// odd part of the subalgebra and whose -1 eigenspace is the odd part of the
// invariant complement.  For gl and sl it is the identity (the complement
// has no odd part).
inline OddElement odd_involution(const Kind& kind, const OddElement& x) {
    switch (kind.family) {
        case Family::GL:
        case Family::SL: return x;
        case Family::Q: return OddElement(x.m, x.n, x.xminus, x.xplus);
        case Family::P:
            return OddElement(x.m, x.n, x.xplus.transpose(), -x.xminus.transpose());
        case Family::OSP_ODD:
        case Family::OSP_EVEN:
            return OddElement(x.m, x.n, detail::osp_phi_inv(kind, x.xminus),
                              detail::osp_phi(kind, x.xplus));
    }
    throw std::logic_error("odd_involution: unreachable");
}

// Companion involution on the even part (undefined for gl and sl, whose even
// complement is handled separately).
inline EvenElement even_involution(const Kind& kind, const EvenElement& e) {
    switch (kind.family) {
        case Family::Q: return EvenElement(e.m, e.n, e.b, e.a);
        case Family::P:
            return EvenElement(e.m, e.n, -e.b.transpose(), -e.a.transpose());
        case Family::OSP_ODD:
        case Family::OSP_EVEN: {
            Matrix s = osp_form_s(kind);
            Matrix k = osp_form_k(kind);
            // theta(a) = -S^-1 a^t S = -S a^t S and theta(b) = -K^-1 b^t K = K b^t K,
            // using S^-1 == S and K^-1 == -K for the fixed split forms.
            return EvenElement(e.m, e.n, -(s * e.a.transpose() * s), k * e.b.transpose() * k);
        }
        default:
            throw std::invalid_argument("even_involution: undefined for gl/sl");
    }
}

inline bool dims_match(const Kind& kind, int m, int n) {
    return kind.ambient_m() == m && kind.ambient_n() == n;
}

// x in g_1(kind)?  (For gl and sl every odd element qualifies.)
inline bool odd_membership(const Kind& kind, const OddElement& x) {
    if (!dims_match(kind, x.m, x.n)) return false;
    return odd_involution(kind, x) == x;
}

inline bool even_membership(const Kind& kind, const EvenElement& e) {
    if (!dims_match(kind, e.m, e.n)) return false;
    switch (kind.family) {
        case Family::GL: return true;
        case Family::SL: return e.supertrace().is_zero();
        default: return even_involution(kind, e) == e;
    }
}

// Splits x into its g_1 part and its complement part (x == first + second).
inline std::pair<OddElement, OddElement> decompose_odd(const Kind& kind, const OddElement& x) {
    if (!dims_match(kind, x.m, x.n)) throw std::invalid_argument("decompose_odd: dimension mismatch");
    if (kind.family == Family::GL || kind.family == Family::SL)
        return {x, OddElement::zero(x.m, x.n)};
    OddElement px = odd_involution(kind, x);
    Rational half(1, 2);
    return {(x + px) * half, (x - px) * half};
}

inline std::pair<EvenElement, EvenElement> decompose_even(const Kind& kind, const EvenElement& e) {
    if (!dims_match(kind, e.m, e.n))
        throw std::invalid_argument("decompose_even: dimension mismatch");
    switch (kind.family) {
        case Family::GL: return {e, EvenElement::zero(e.m, e.n)};
        case Family::SL: {
            // Complement line = scalars (I, I); str(I, I) = m - n, so the
            // split exists only off the m == n diagonal.
            if (e.m == e.n)
                throw std::invalid_argument("decompose_even: sl(n|n) has no invariant complement");
            Rational lam = e.supertrace() / Rational(e.m - e.n);
            Matrix im = Matrix::identity(e.m) * lam;
            Matrix in = Matrix::identity(e.n) * lam;
            return {EvenElement(e.m, e.n, e.a - im, e.b - in), EvenElement(e.m, e.n, im, in)};
        }
        default: {
            EvenElement pe = even_involution(kind, e);
            Rational half(1, 2);
            return {(e + pe) * half, (e - pe) * half};
        }
    }
}

}  // namespace oddcone
