#include "fusible/ordinal.hpp"

#include <cctype>
#include <limits>
#include <utility>

namespace fusible {

namespace {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
    if (a > std::numeric_limits<std::uint64_t>::max() - b)
        throw OutOfRange("ordinal coefficient overflow");
    return a + b;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    if (b != 0 && a > std::numeric_limits<std::uint64_t>::max() / b)
        throw OutOfRange("ordinal coefficient overflow");
    return a * b;
}

}  // namespace

CnfOrdinal::CnfOrdinal(std::uint64_t n) {
    if (n > 0) terms_.push_back(Term{CnfOrdinal(), n});
}

CnfOrdinal CnfOrdinal::omega() { return omega_pow(CnfOrdinal(1)); }

CnfOrdinal CnfOrdinal::omega_pow(CnfOrdinal exponent) {
    CnfOrdinal r;
    r.terms_.push_back(Term{std::move(exponent), 1});
    return r;
}

std::optional<std::uint64_t> CnfOrdinal::as_nat() const {
    if (terms_.empty()) return 0;
    if (terms_.size() == 1 && terms_[0].exponent.is_zero()) return terms_[0].coeff;
    return std::nullopt;
}

int CnfOrdinal::cmp(const CnfOrdinal& o) const {
    const std::size_t n = std::min(terms_.size(), o.terms_.size());
    for (std::size_t i = 0; i < n; ++i) {
        int c = terms_[i].exponent.cmp(o.terms_[i].exponent);
        if (c != 0) return c;
        if (terms_[i].coeff != o.terms_[i].coeff)
            return terms_[i].coeff < o.terms_[i].coeff ? -1 : 1;
    }
    if (terms_.size() != o.terms_.size()) return terms_.size() < o.terms_.size() ? -1 : 1;
    return 0;
}

CnfOrdinal CnfOrdinal::add(const CnfOrdinal& o) const {
    if (o.terms_.empty()) return *this;
    const CnfOrdinal& lead = o.terms_.front().exponent;
    CnfOrdinal r;
    std::uint64_t merged = 0;
    for (const Term& t : terms_) {
        int c = t.exponent.cmp(lead);
        if (c > 0) {
            r.terms_.push_back(t);
            continue;
        }
        if (c == 0) merged = t.coeff;  // absorbed into o's leading term
        break;                         // everything below lead is erased by the addition
    }
    Term first = o.terms_.front();
    first.coeff = checked_add(first.coeff, merged);
    r.terms_.push_back(std::move(first));
    r.terms_.insert(r.terms_.end(), o.terms_.begin() + 1, o.terms_.end());
    return r;
}

CnfOrdinal CnfOrdinal::left_sub(const CnfOrdinal& gamma) const {
    const auto too_large = [&] {
        return SubtrahendTooLarge(format_ordinal(gamma) + " > " + format_ordinal(*this));
    };
    std::size_t i = 0;
    for (; i < gamma.terms_.size(); ++i) {
        if (i >= terms_.size()) throw too_large();  // gamma extends beyond *this
        const Term& g = gamma.terms_[i];
        const Term& b = terms_[i];
        int c = b.exponent.cmp(g.exponent);
        if (c < 0) throw too_large();
        if (c > 0) {
            // *this already exceeds gamma at this term; adding the rest of
            // *this from here on reconstructs it.
            CnfOrdinal r;
            r.terms_.assign(terms_.begin() + static_cast<std::ptrdiff_t>(i), terms_.end());
            return r;
        }
        if (b.coeff != g.coeff) {
            if (b.coeff < g.coeff) throw too_large();
            CnfOrdinal r;
            r.terms_.push_back(Term{b.exponent, b.coeff - g.coeff});
            r.terms_.insert(r.terms_.end(), terms_.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                            terms_.end());
            return r;
        }
    }
    CnfOrdinal r;
    r.terms_.assign(terms_.begin() + static_cast<std::ptrdiff_t>(i), terms_.end());
    return r;
}

CnfOrdinal CnfOrdinal::mul_nat(std::uint64_t n) const {
    if (n == 0 || terms_.empty()) return CnfOrdinal();
    CnfOrdinal r = *this;
    r.terms_.front().coeff = checked_mul(r.terms_.front().coeff, n);
    return r;
}

CnfOrdinal CnfOrdinal::pred() const {
    if (!is_successor()) throw Error("pred applies only to successor ordinals");
    CnfOrdinal r = *this;
    if (r.terms_.back().coeff > 1)
        r.terms_.back().coeff -= 1;
    else
        r.terms_.pop_back();
    return r;
}

CnfOrdinal CnfOrdinal::fs(std::uint64_t n) const {
    if (!is_limit()) throw NotALimit(format_ordinal(*this));
    CnfOrdinal beta = *this;
    Term last = beta.terms_.back();
    if (last.coeff > 1)
        beta.terms_.back().coeff -= 1;
    else
        beta.terms_.pop_back();
    if (last.exponent.is_successor()) {
        if (n > 0) beta.terms_.push_back(Term{last.exponent.pred(), n});
        return beta;
    }
    beta.terms_.push_back(Term{last.exponent.fs(n), 1});
    return beta;
}

namespace {

class OrdParser {
  public:
    explicit OrdParser(std::string_view text) : s_(text) {}

    CnfOrdinal parse() {
        CnfOrdinal r = parse_cnf(0);
        skip_ws();
        if (pos_ != s_.size()) throw ParseError("trailing characters in ordinal");
        return r;
    }

  private:
    static constexpr int kMaxDepth = 4096;

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    bool peek_digit() {
        skip_ws();
        return pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]));
    }

    std::uint64_t parse_int() {
        skip_ws();
        if (!peek_digit()) throw ParseError("expected integer in ordinal");
        std::uint64_t v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            unsigned d = static_cast<unsigned>(s_[pos_] - '0');
            if (v > (std::numeric_limits<std::uint64_t>::max() - d) / 10)
                throw ParseError("ordinal coefficient too large");
            v = v * 10 + d;
            ++pos_;
        }
        return v;
    }

    // One term: (exponent, coeff); a bare INT yields exponent 0.
    CnfOrdinal::Term parse_term(int depth) {
        skip_ws();
        if (pos_ >= s_.size()) throw ParseError("expected ordinal term");
        CnfOrdinal::Term t;
        if (s_[pos_] == 'w') {
            ++pos_;
            if (eat('^')) {
                if (!eat('(')) throw ParseError("expected '(' after w^");
                t.exponent = parse_cnf(depth + 1);
                if (!eat(')')) throw ParseError("expected ')' closing w^(");
                if (t.exponent.is_zero()) throw NonCanonical("w^(0) must be written as 1");
                if (t.exponent == CnfOrdinal(1)) throw NonCanonical("w^(1) must be written as w");
            } else {
                t.exponent = CnfOrdinal(1);
            }
            if (eat('*')) {
                t.coeff = parse_int();
                if (t.coeff == 0) throw NonCanonical("zero coefficient");
            }
        } else if (peek_digit()) {
            t.exponent = CnfOrdinal();
            t.coeff = parse_int();  // 0 allowed only as the whole ordinal; checked by caller
        } else {
            throw ParseError(std::string("unexpected character '") + s_[pos_] + "' in ordinal");
        }
        return t;
    }

    CnfOrdinal parse_cnf(int depth) {
        if (depth > kMaxDepth) throw ParseError("ordinal nesting too deep");
        std::vector<CnfOrdinal::Term> terms;
        terms.push_back(parse_term(depth));
        while (eat('+')) terms.push_back(parse_term(depth));
        if (terms.size() == 1 && terms[0].exponent.is_zero() && terms[0].coeff == 0)
            return CnfOrdinal();  // "0"
        CnfOrdinal r;
        for (CnfOrdinal::Term& t : terms) {
            if (t.coeff == 0) throw NonCanonical("zero term in a sum");
            if (!r.terms().empty() && !(r.terms().back().exponent > t.exponent))
                throw NonCanonical("exponents must strictly decrease");
            // build in place through add of a single canonical term
            r = r + [&] {
                CnfOrdinal one = CnfOrdinal::omega_pow(t.exponent).mul_nat(t.coeff);
                return one;
            }();
        }
        return r;
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace

CnfOrdinal parse_ordinal(std::string_view text) { return OrdParser(text).parse(); }

std::string format_ordinal(const CnfOrdinal& a) {
    if (a.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const CnfOrdinal::Term& t : a.terms()) {
        if (!first) out += "+";
        first = false;
        if (t.exponent.is_zero()) {
            out += std::to_string(t.coeff);
            continue;
        }
        if (t.exponent == CnfOrdinal(1))
            out += "w";
        else
            out += "w^(" + format_ordinal(t.exponent) + ")";
        if (t.coeff != 1) out += "*" + std::to_string(t.coeff);
    }
    return out;
}

}  // namespace fusible
