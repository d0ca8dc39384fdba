#include "tessiso/rational.hpp"

#include "tessiso/errors.hpp"

#include <cctype>

namespace tessiso {

namespace {

Integer parse_integer(std::string_view text, std::string_view whole) {
    if (text.empty()) throw Error(ErrorCode::ParseError, "empty number in \"" + std::string(whole) + "\"");
    size_t i = 0;
    bool negative = false;
    if (text[0] == '-' || text[0] == '+') {
        negative = text[0] == '-';
        i = 1;
    }
    if (i == text.size()) throw Error(ErrorCode::ParseError, "bad number \"" + std::string(whole) + "\"");
    Integer value = 0;
    for (; i < text.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(text[i])))
            throw Error(ErrorCode::ParseError, "bad number \"" + std::string(whole) + "\"");
        value = value * 10 + (text[i] - '0');
    }
    return negative ? Integer(-value) : value;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

Rational parse_rational(std::string_view raw) {
    const std::string_view text = trim(raw);
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        Integer num = parse_integer(trim(text.substr(0, slash)), text);
        Integer den = parse_integer(trim(text.substr(slash + 1)), text);
        if (den == 0) throw Error(ErrorCode::ParseError, "zero denominator in \"" + std::string(text) + "\"");
        return Rational(num, den);
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string_view int_part = text.substr(0, dot);
        std::string_view frac_part = text.substr(dot + 1);
        bool negative = !int_part.empty() && int_part[0] == '-';
        if (!int_part.empty() && (int_part[0] == '-' || int_part[0] == '+')) int_part.remove_prefix(1);
        if (int_part.empty() && frac_part.empty())
            throw Error(ErrorCode::ParseError, "bad decimal \"" + std::string(text) + "\"");
        Integer whole = int_part.empty() ? Integer(0) : parse_integer(int_part, text);
        Integer frac = 0;
        Integer scale = 1;
        for (char ch : frac_part) {
            if (!std::isdigit(static_cast<unsigned char>(ch)))
                throw Error(ErrorCode::ParseError, "bad decimal \"" + std::string(text) + "\"");
            frac = frac * 10 + (ch - '0');
            scale *= 10;
        }
        Rational r = Rational(whole) + Rational(frac, scale);
        return negative ? Rational(-r) : r;
    }
    return Rational(parse_integer(text, text));
}

std::string to_string(const Rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

const Rational& ExtRational::value() const {
    if (infinite_) throw Error(ErrorCode::OutOfRange, "value() of infinite ExtRational");
    return value_;
}

Rational ExtRational::reciprocal() const {
    if (infinite_) return Rational(0);
    if (value_ == 0) throw Error(ErrorCode::OutOfRange, "reciprocal of zero");
    return Rational(1) / value_;
}

ExtRational ExtRational::operator+(const ExtRational& o) const {
    if (infinite_ || o.infinite_) return infinity();
    return ExtRational(value_ + o.value_);
}

ExtRational ExtRational::operator*(const Rational& factor) const {
    if (infinite_) return infinity();
    return ExtRational(value_ * factor);
}

std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b) {
    if (a.infinite_ && b.infinite_) return std::strong_ordering::equal;
    if (a.infinite_) return std::strong_ordering::greater;
    if (b.infinite_) return std::strong_ordering::less;
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (a.value_ > b.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string to_string(const ExtRational& r) { return r.is_infinite() ? "inf" : to_string(r.value()); }

ExtRational parse_ext_rational(std::string_view text) {
    std::string_view t = trim(text);
    if (t == "inf" || t == "+inf" || t == "infinity") return ExtRational::infinity();
    return ExtRational(parse_rational(t));
}

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::MalformedRotation: return "MalformedRotation";
        case ErrorCode::NonSimple: return "NonSimple";
        case ErrorCode::Disconnected: return "Disconnected";
        case ErrorCode::NonPositiveLength: return "NonPositiveLength";
        case ErrorCode::InconsistentFrontier: return "InconsistentFrontier";
        case ErrorCode::DisconnectedSelection: return "DisconnectedSelection";
        case ErrorCode::FrontierContact: return "FrontierContact";
        case ErrorCode::IndeterminateFaces: return "IndeterminateFaces";
        case ErrorCode::EmptyFrontierFreeRegion: return "EmptyFrontierFreeRegion";
        case ErrorCode::NotFiniteTessellation: return "NotFiniteTessellation";
        case ErrorCode::NotStarLikeComplete: return "NotStarLikeComplete";
        case ErrorCode::BudgetExceeded: return "BudgetExceeded";
        case ErrorCode::NotApplicable: return "NotApplicable";
        case ErrorCode::NonPositiveEllMin: return "NonPositiveEllMin";
        case ErrorCode::OutOfRange: return "OutOfRange";
        case ErrorCode::NegativeCurvatureParams: return "NegativeCurvatureParams";
        case ErrorCode::RadiusTooSmall: return "RadiusTooSmall";
        case ErrorCode::ParamTooSmall: return "ParamTooSmall";
        case ErrorCode::TruncationTooShallow: return "TruncationTooShallow";
        case ErrorCode::MissingAnalysis: return "MissingAnalysis";
    }
    return "UnknownError";
}

}  // namespace tessiso
