#include "qpsc/potential.hpp"

#include "qpsc/numfmt.hpp"

#include <cctype>
#include <charconv>
#include <cmath>

namespace qpsc {

ParseError::ParseError(std::size_t offset, const std::string& expected)
    : std::runtime_error("parse error at offset " + std::to_string(offset) + ": expected " + expected),
      offset_(offset)
{
}

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    PotentialSpec parse()
    {
        std::vector<PotentialTerm> terms;
        skip_space();
        terms.push_back(!starts_number() && accept('-') ? term(-1.0) : term(1.0));
        while (true) {
            skip_space();
            if (at_end()) break;
            if (accept('+'))
                terms.push_back(term(1.0));
            else if (accept('-'))
                terms.push_back(term(-1.0));
            else
                fail("'+', '-' or end of input");
        }
        return PotentialSpec(std::move(terms));
    }

private:
    PotentialTerm term(double sign)
    {
        skip_space();
        if (starts_number()) {
            const double amplitude = sign * number();
            skip_space();
            if (!accept('*')) return PotentialTerm::constant(amplitude);
            return factor(amplitude);
        }
        return factor(sign);
    }

    PotentialTerm factor(double amplitude)
    {
        skip_space();
        if (accept_word("cos")) {
            const double w = argument();
            return PotentialTerm::cosine(amplitude, w);
        }
        if (accept_word("sin")) {
            const double g = argument();
            return PotentialTerm::sine(amplitude, g);
        }
        if (accept_word("theta")) {
            skip_space();
            if (!accept('^')) return PotentialTerm::monomial(amplitude, 1);
            skip_space();
            return PotentialTerm::monomial(amplitude, exponent());
        }
        fail("'cos', 'sin' or 'theta'");
    }

    // '(' ( 'theta' | NUMBER '*' 'theta' ) ')'
    double argument()
    {
        skip_space();
        if (!accept('(')) fail("'('");
        skip_space();
        double scale = 1.0;
        if (starts_number()) {
            const std::size_t at = pos_;
            scale = number();
            if (!(scale > 0.0)) {
                pos_ = at;
                fail("positive frequency");
            }
            skip_space();
            if (!accept('*')) fail("'*'");
            skip_space();
        }
        if (!accept_word("theta")) fail("'theta'");
        skip_space();
        if (!accept(')')) fail("')'");
        return scale;
    }

    double number()
    {
        double sign = 1.0;
        if (accept('+'))
            ;
        else if (accept('-'))
            sign = -1.0;
        if (at_end() || !(std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) fail("number");
        const char* first = text_.data() + pos_;
        const char* last = text_.data() + text_.size();
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(first, last, value, std::chars_format::general);
        if (ec != std::errc() || !std::isfinite(value)) fail("number");
        pos_ += static_cast<std::size_t>(ptr - first);
        return sign * value;
    }

    int exponent()
    {
        const char* first = text_.data() + pos_;
        const char* last = text_.data() + text_.size();
        int value = 0;
        const auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc() || value < 0) fail("nonnegative integer exponent");
        pos_ += static_cast<std::size_t>(ptr - first);
        return value;
    }

    bool starts_number() const
    {
        std::size_t p = pos_;
        if (p < text_.size() && (text_[p] == '+' || text_[p] == '-')) ++p;
        return p < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[p])) || text_[p] == '.');
    }

    bool accept(char c)
    {
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    bool accept_word(std::string_view word)
    {
        if (text_.substr(pos_, word.size()) != word) return false;
        pos_ += word.size();
        return true;
    }

    void skip_space()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool at_end() const { return pos_ >= text_.size(); }

    [[noreturn]] void fail(const std::string& expected) const { throw ParseError(pos_, expected); }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

PotentialSpec parse_potential(std::string_view text)
{
    bool blank = true;
    for (char c : text) blank = blank && std::isspace(static_cast<unsigned char>(c));
    if (blank) throw ParseError(0, "a potential term");
    return Parser(text).parse();
}

std::string format_potential(const PotentialSpec& spec)
{
    std::string out;
    for (const auto& t : spec.terms()) {
        if (!out.empty()) out += " + ";
        out += format_significant(t.amplitude, 17);
        switch (t.kind) {
        case TermKind::Constant: break;
        case TermKind::Cosine:
            out += t.parameter == 1.0 ? "*cos(theta)" : "*cos(" + format_significant(t.parameter, 17) + "*theta)";
            break;
        case TermKind::SineGamma: out += "*sin(" + format_significant(t.parameter, 17) + "*theta)"; break;
        case TermKind::Monomial: out += "*theta^" + std::to_string(t.exponent()); break;
        }
    }
    return out;
}

}  // namespace qpsc
