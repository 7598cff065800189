#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "krein/abpair.hpp"
#include "krein/cmatrix.hpp"
#include "krein/colligation.hpp"
#include "krein/errors.hpp"
#include "krein/metric.hpp"
#include "krein/quaternion.hpp"

namespace krein {

using njson = nlohmann::json;

// Shortest round-trip decimal representation; report bytes must be
// identical across runs and platforms for the same inputs.
inline std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    return out;
}

// Hand-rolled writer: key order is insertion order and numbers go
// through format_double, which nlohmann does not guarantee.
class JsonWriter {
  public:
    JsonWriter& begin_object() { return raw("{"); }
    JsonWriter& end_object() { return raw("}"); }
    JsonWriter& begin_array() { return raw("["); }
    JsonWriter& end_array() { return raw("]"); }
    JsonWriter& comma() { return raw(","); }

    JsonWriter& key(const std::string& k) {
        out_ << '"' << json_escape(k) << "\":";
        return *this;
    }
    JsonWriter& value(const std::string& s) {
        out_ << '"' << json_escape(s) << '"';
        return *this;
    }
    JsonWriter& value(double v) {
        out_ << format_double(v);
        return *this;
    }
    JsonWriter& value(std::uint64_t v) {
        out_ << v;
        return *this;
    }
    JsonWriter& value(std::int64_t v) {
        out_ << v;
        return *this;
    }
    JsonWriter& value(bool b) {
        out_ << (b ? "true" : "false");
        return *this;
    }
    JsonWriter& value(cx z) {
        out_ << '[' << format_double(z.real()) << ',' << format_double(z.imag()) << ']';
        return *this;
    }
    JsonWriter& value(const CMatrix& m) {
        begin_array();
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i) comma();
            begin_array();
            for (std::size_t j = 0; j < m.cols(); ++j) {
                if (j) comma();
                value(m(i, j));
            }
            end_array();
        }
        return end_array();
    }
    JsonWriter& raw(const std::string& s) {
        out_ << s;
        return *this;
    }

    std::string str() const { return out_.str(); }

  private:
    std::ostringstream out_;
};

// ---- fixture parsing (complex numbers as [re, im], quaternions as
// [x0,x1,x2,x3], matrices row-major, metrics as signature lists) ----

inline cx parse_complex(const njson& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ParseError("expected a complex number as [re, im]");
    return cx(j[0].get<double>(), j[1].get<double>());
}

inline Quaternion parse_quaternion(const njson& j) {
    if (!j.is_array() || j.size() != 4) throw ParseError("expected a quaternion as [x0, x1, x2, x3]");
    for (const auto& v : j)
        if (!v.is_number()) throw ParseError("quaternion components must be numbers");
    return Quaternion(j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>());
}

inline CMatrix parse_matrix(const njson& j, std::size_t expect_rows = SIZE_MAX,
                            std::size_t expect_cols = SIZE_MAX) {
    if (!j.is_array()) throw ParseError("expected a matrix as nested arrays");
    const std::size_t rows = j.size();
    std::size_t cols = rows ? j[0].size() : 0;
    if (expect_cols != SIZE_MAX && rows == 0) cols = expect_cols;
    CMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols) throw ParseError("ragged matrix rows");
        for (std::size_t k = 0; k < cols; ++k) m(i, k) = parse_complex(j[i][k]);
    }
    if ((expect_rows != SIZE_MAX && rows != expect_rows) || (expect_cols != SIZE_MAX && cols != expect_cols))
        throw ParseError("matrix has unexpected shape");
    return m;
}

inline Metric parse_metric(const njson& j) {
    if (!j.is_array()) throw ParseError("expected a metric as a signature list like [1, 1, -1]");
    std::vector<int> signs;
    for (const auto& v : j) {
        if (!v.is_number_integer()) throw ParseError("metric entries must be +1 or -1");
        const int s = v.get<int>();
        if (s != 1 && s != -1) throw ParseError("metric entries must be +1 or -1");
        signs.push_back(s);
    }
    return Metric::from_signature(std::move(signs));
}

inline Colligation parse_colligation(const njson& j, double tol = 1e-8) {
    for (const char* key : {"alpha", "metric_p", "metric_d", "metric_c", "t", "f", "g", "h"})
        if (!j.contains(key)) throw ParseError(std::string("colligation misses field '") + key + "'");
    const Metric p = parse_metric(j["metric_p"]);
    const Metric d = parse_metric(j["metric_d"]);
    const Metric c = parse_metric(j["metric_c"]);
    try {
        return Colligation(parse_matrix(j["t"], p.dim(), p.dim()), parse_matrix(j["f"], p.dim(), d.dim()),
                           parse_matrix(j["g"], c.dim(), p.dim()), parse_matrix(j["h"], c.dim(), d.dim()),
                           p, d, c, parse_complex(j["alpha"]), tol);
    } catch (const DimensionMismatch& e) {
        throw ParseError(std::string("colligation blocks inconsistent: ") + e.what());
    } catch (const DomainViolation& e) {
        throw ParseError(std::string("colligation invalid: ") + e.what());
    }
}

inline FiniteModelSpace parse_model_space(const njson& j) {
    for (const char* key : {"alpha", "gram", "a_alpha", "e_alpha", "metric_c"})
        if (!j.contains(key)) throw ParseError(std::string("model space misses field '") + key + "'");
    FiniteModelSpace m;
    m.gram = parse_matrix(j["gram"]);
    m.a_alpha = parse_matrix(j["a_alpha"], m.gram.rows(), m.gram.cols());
    m.coeff = parse_metric(j["metric_c"]);
    m.e_alpha = parse_matrix(j["e_alpha"], m.coeff.dim(), m.gram.rows());
    m.alpha = parse_complex(j["alpha"]);
    return m;
}

inline Polynomial parse_polynomial(const njson& j) {
    if (!j.is_array()) throw ParseError("expected polynomial coefficients as a list of [re, im]");
    std::vector<cx> coeffs;
    for (const auto& v : j) coeffs.push_back(parse_complex(v));
    return Polynomial(std::move(coeffs));
}

inline ABPair parse_ab_pair(const njson& j) {
    for (const char* key : {"a", "b", "domain"})
        if (!j.contains(key)) throw ParseError(std::string("ab pair misses field '") + key + "'");
    const njson& dom = j["domain"];
    if (!dom.contains("type")) throw ParseError("domain misses 'type'");
    DomainSpec spec;
    const std::string type = dom["type"].get<std::string>();
    if (type == "rectangle") {
        spec = DomainSpec::rectangle(dom["re"][0].get<double>(), dom["re"][1].get<double>(),
                                     dom["im"][0].get<double>(), dom["im"][1].get<double>());
    } else if (type == "disk") {
        spec = DomainSpec::disk(parse_complex(dom["center"]), dom["radius"].get<double>());
    } else {
        throw ParseError("domain type must be 'rectangle' or 'disk'");
    }
    try {
        return ABPair(parse_polynomial(j["a"]), parse_polynomial(j["b"]), spec);
    } catch (const DomainViolation& e) {
        throw ParseError(std::string("ab pair invalid: ") + e.what());
    }
}

inline std::vector<cx> parse_points(const njson& j) {
    if (!j.is_array()) throw ParseError("expected a list of complex points");
    std::vector<cx> pts;
    for (const auto& v : j) pts.push_back(parse_complex(v));
    return pts;
}

inline njson load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open input file: " + path);
    try {
        return njson::parse(in);
    } catch (const njson::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
}

inline void write_colligation(JsonWriter& w, const Colligation& c) {
    w.begin_object();
    w.key("alpha").value(c.alpha()).comma();
    auto sig = [&](const Metric& m) {
        w.begin_array();
        for (std::size_t i = 0; i < m.dim(); ++i) {
            if (i) w.comma();
            w.value(std::int64_t(m.sign(i)));
        }
        w.end_array();
    };
    w.key("metric_p");
    sig(c.space_p());
    w.comma().key("metric_d");
    sig(c.space_d());
    w.comma().key("metric_c");
    sig(c.space_c());
    w.comma().key("t").value(c.t());
    w.comma().key("f").value(c.f());
    w.comma().key("g").value(c.g());
    w.comma().key("h").value(c.h());
    w.end_object();
}

}  // namespace krein
