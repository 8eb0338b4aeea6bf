#include "ppri/json_io.hpp"

#include "ppri/error.hpp"

namespace ppri::json_io {

namespace {

[[noreturn]] void bad(const std::string& what) { fail(ErrorKind::ParseError, what); }

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
    return j.at(key);
}

const Json& array_field(const Json& j, const char* key) {
    const Json& a = field(j, key);
    if (!a.is_array()) bad(std::string("field '") + key + "' must be an array");
    return a;
}

} // namespace

Rational rational_from(const Json& j) {
    if (j.is_string()) return parse_exact_decimal(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_number_unsigned()) return Rational(j.get<unsigned long>());
    if (j.is_number_float()) {
        const double d = j.get<double>();
        if (!std::isfinite(d)) bad("non-finite number");
        return Rational(d);
    }
    bad("expected a rational (string or number), got " + j.dump());
}

std::vector<Rational> vector_from(const Json& j) {
    if (!j.is_array()) bad("expected an array, got " + j.dump());
    std::vector<Rational> out;
    for (const auto& x : j) out.push_back(rational_from(x));
    return out;
}

std::vector<double> real_vector_from(const Json& j) {
    if (!j.is_array()) bad("expected an array, got " + j.dump());
    std::vector<double> out;
    for (const auto& x : j) out.push_back(x.is_number_float() ? x.get<double>() : rational_from(x).get_d());
    return out;
}

RationalMatrix matrix_from(const Json& j) {
    if (!j.is_array()) bad("matrix must be an array of rows");
    std::vector<std::vector<Rational>> rows;
    for (const auto& r : j) rows.push_back(vector_from(r));
    return RationalMatrix::from_rows(rows);
}

CoeffSeq<Rational> series_from(const Json& j) {
    const std::string kind = j.value("kind", "finite");
    if (kind != "finite") bad("only finite series can be read from JSON, got kind '" + kind + "'");
    const std::string scalar = j.value("scalar", "rational");
    auto terms = vector_from(array_field(j, "terms"));
    if (scalar == "rational") return CoeffSeq<Rational>::finite(std::move(terms));
    if (scalar == "padic") {
        const Json& p = field(j, "prime");
        if (!p.is_number_integer()) bad("prime must be an integer");
        return CoeffSeq<Rational>::finite(std::move(terms), ScalarTag::padic(Prime(p.get<std::int64_t>())));
    }
    bad("unknown scalar '" + scalar + "'");
}

LaurentSeq laurent_from(const Json& j) {
    const Json& s = field(j, "support");
    if (!s.is_object()) bad("support must be an object of index -> coefficient");
    LaurentSeq::Support support;
    for (auto it = s.begin(); it != s.end(); ++it) {
        long index = 0;
        try {
            std::size_t used = 0;
            index = std::stol(it.key(), &used);
            if (used != it.key().size()) throw std::invalid_argument(it.key());
        } catch (const std::exception&) {
            bad("support index '" + it.key() + "' is not an integer");
        }
        support[index] = rational_from(it.value());
    }
    if (j.contains("tail")) return LaurentSeq::truncated(std::move(support), rational_from(j.at("tail")));
    return LaurentSeq::finite(std::move(support));
}

ConvexRegion region_from(const Json& j) {
    const Json& type = field(j, "type");
    if (!type.is_string()) bad("region type must be a string");
    const std::string t = type.get<std::string>();
    if (t == "box") {
        if (j.contains("halfwidths")) return symmetric_box(vector_from(j.at("halfwidths")));
        return box_region(vector_from(array_field(j, "lower")), vector_from(array_field(j, "upper")));
    }
    if (t == "ellipsoid") return ellipsoid_region(matrix_from(field(j, "matrix")));
    if (t == "named") {
        const Json& dim = field(j, "dim");
        if (!dim.is_number_unsigned()) bad("dim must be a positive integer");
        return named_region(field(j, "name").get<std::string>(), dim.get<std::size_t>(),
                            rational_from(field(j, "radius")));
    }
    bad("unknown region type '" + t + "'");
}

Json to_json(const Rational& x) { return ppri::to_string(x); }

Json to_json(std::span<const Rational> v) {
    Json out = Json::array();
    for (const auto& x : v) out.push_back(to_json(x));
    return out;
}

Json to_json(const PAdic& x) {
    Json out;
    out["prime"] = x.prime().value();
    if (x.is_zero())
        out["valuation"] = "inf";
    else
        out["valuation"] = x.valuation().value();
    out["digits"] = x.digits();
    out["precision"] = x.precision();
    return out;
}

Json to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const RationalMatrix& m) {
    Json out = Json::array();
    for (std::size_t i = 0; i < m.size(); ++i) out.push_back(to_json(m.row(i)));
    return out;
}

Json to_json(const EigenDecomp& e) { return Json{{"eigenvalues", e.eigenvalues}, {"residual", e.residual}}; }

Json to_json(const AxiomReport& r) {
    Json out{{"axiom", r.axiom}, {"status", r.status == AxiomStatus::pass ? "pass" : "fail"}, {"checks", r.checks}};
    if (r.counterexample) out["counterexample"] = *r.counterexample;
    if (!r.detail.empty()) out["detail"] = r.detail;
    return out;
}

namespace {

template <class T>
Json sum_json(const SumResult<T>& s, Json value) {
    return Json{{"value", std::move(value)},
                {"terms_used", s.terms_used},
                {"error_bound", s.error_bound.bound},
                {"exact", s.error_bound.exact},
                {"certified", s.certified}};
}

} // namespace

Json to_json(const SumResult<Complex>& s) { return sum_json(s, to_json(s.value)); }
Json to_json(const SumResult<double>& s) { return sum_json(s, s.value); }
Json to_json(const SumResult<PAdic>& s) { return sum_json(s, to_json(s.value)); }

Json to_json(const LaurentSeq& a) {
    Json support = Json::object();
    for (const auto& [k, v] : a.support()) support[std::to_string(k)] = to_json(v);
    Json out{{"support", support}};
    if (a.has_infinite_support()) out["tail"] = to_json(a.tail_bound());
    return out;
}

} // namespace ppri::json_io
