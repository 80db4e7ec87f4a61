#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "gti/conditions.hpp"
#include "gti/reference_systems.hpp"
#include "gti/torus_exact.hpp"

namespace gti {

using njson = nlohmann::json;

/// FNV-1a 64 over raw bytes, rendered as "fnv1a64:<16 hex digits>". Used as
/// the provenance digest of input descriptors.
inline std::string fnv1a64_digest(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
    return buf;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline njson parse_json_text(const std::string& text) {
    try {
        return njson::parse(text);
    } catch (const std::exception& e) {
        throw InvalidInput(std::string("malformed JSON: ") + e.what());
    }
}

inline const njson& require_field(const njson& j, const char* key) {
    if (!j.is_object()) throw InvalidInput(std::string("expected an object with field '") + key + "'");
    auto it = j.find(key);
    if (it == j.end()) throw InvalidInput(std::string("missing field '") + key + "'");
    return *it;
}

/// Rationals arrive as strings "p/q" or integers; floats are rejected so
/// descriptors stay exact.
inline Rat rational_from_json(const njson& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rat(j.get<long long>());
    throw InvalidInput("rationals must be strings like \"3/4\" or integers");
}

inline cplx complex_from_json(const njson& j) {
    if (j.is_number()) return cplx(j.get<double>(), 0.0);
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return cplx(j[0].get<double>(), j[1].get<double>());
    throw InvalidInput("complex values must be numbers or [re, im] pairs");
}

inline Element element_from_json(const njson& j) {
    if (!j.is_array()) throw InvalidInput("group elements must be coordinate arrays");
    Element e;
    for (const njson& c : j) {
        if (!c.is_number_integer()) throw InvalidInput("element coordinates must be integers");
        e.push_back(c.get<long long>());
    }
    return e;
}

inline Group group_from_json(const njson& j) {
    const njson& factors = require_field(j, "factors");
    if (!factors.is_array() || factors.empty()) throw InvalidInput("'factors' must be a nonempty array");
    std::vector<long long> f;
    for (const njson& d : factors) {
        if (!d.is_number_integer()) throw InvalidInput("factors must be integers");
        f.push_back(d.get<long long>());
    }
    Rat w(1);
    if (j.contains("weight")) w = rational_from_json(j.at("weight"));
    return make_group(std::move(f), std::move(w));
}

inline Subgroup subgroup_from_json(const Group& g, const njson& j) {
    const njson& gens = require_field(j, "generators");
    if (!gens.is_array()) throw InvalidInput("'generators' must be an array of elements");
    std::vector<Element> parsed;
    for (const njson& e : gens) parsed.push_back(element_from_json(e));
    return subgroup_from_generators(g, std::move(parsed));
}

inline GroupFunction function_from_json(const Group& g, const njson& j) {
    if (!j.is_array()) throw InvalidInput("function values must be an array");
    std::vector<cplx> vals;
    for (const njson& v : j) vals.push_back(complex_from_json(v));
    return GroupFunction(g, std::move(vals));
}

inline GtiSystem system_from_json(const njson& j) {
    GtiSystem sys;
    sys.group = group_from_json(require_field(j, "group"));
    const njson& layers = require_field(j, "layers");
    if (!layers.is_array()) throw InvalidInput("'layers' must be an array");
    for (const njson& lj : layers) {
        Layer layer;
        layer.gamma = subgroup_from_json(sys.group, require_field(lj, "gamma"));
        const njson& gens = require_field(lj, "generators");
        if (!gens.is_array()) throw InvalidInput("layer 'generators' must be an array");
        for (const njson& gj : gens) {
            Generator gen;
            gen.fn = function_from_json(sys.group, require_field(gj, "values"));
            if (gj.contains("weight")) gen.weight = rational_from_json(gj.at("weight"));
            layer.generators.push_back(std::move(gen));
        }
        sys.layers.push_back(std::move(layer));
    }
    validate_system(sys);
    return sys;
}

inline GaborSystem gabor_from_json(const njson& j) {
    GaborSystem sys;
    sys.group = group_from_json(require_field(j, "group"));
    sys.lambda = subgroup_from_json(sys.group, require_field(j, "lambda"));
    sys.gamma_hat = subgroup_from_json(sys.group.dual(), require_field(j, "gamma_hat"));
    sys.g = function_from_json(sys.group, require_field(j, "g"));
    sys.h = function_from_json(sys.group, require_field(j, "h"));
    validate_gabor(sys);
    return sys;
}

struct FiniteGaborDescriptor {
    long long d = 0, a = 0, b = 0;
    std::vector<cplx> g, h;
};

inline FiniteGaborDescriptor finite_gabor_from_json(const njson& j) {
    FiniteGaborDescriptor desc;
    const std::pair<const char*, long long*> fields[] = {{"d", &desc.d}, {"a", &desc.a}, {"b", &desc.b}};
    for (auto [key, out] : fields) {
        const njson& v = require_field(j, key);
        if (!v.is_number_integer()) throw InvalidInput(std::string("'") + key + "' must be an integer");
        *out = v.get<long long>();
    }
    const njson& gv = require_field(j, "g");
    const njson& hv = require_field(j, "h");
    if (!gv.is_array() || !hv.is_array()) throw InvalidInput("windows must be value arrays");
    for (const njson& v : gv) desc.g.push_back(complex_from_json(v));
    for (const njson& v : hv) desc.h.push_back(complex_from_json(v));
    return desc;
}

inline StepProfile profile_from_json(const njson& j) {
    const njson& dom = require_field(j, "domain");
    if (!dom.is_string()) throw InvalidInput("'domain' must be \"torus\" or \"real\"");
    std::string d = dom.get<std::string>();
    bool torus;
    if (d == "torus")
        torus = true;
    else if (d == "real" || d == "real-line")
        torus = false;
    else
        throw InvalidInput("'domain' must be \"torus\" or \"real\"");
    const njson& plist = require_field(j, "pieces");
    if (!plist.is_array()) throw InvalidInput("'pieces' must be an array");
    std::vector<Piece> pieces;
    for (const njson& pj : plist) {
        Rat lo = rational_from_json(require_field(pj, "lo"));
        Rat hi = rational_from_json(require_field(pj, "hi"));
        if (pj.contains("sq")) {
            pieces.push_back(make_exact_piece(std::move(lo), std::move(hi), rational_from_json(pj.at("sq"))));
        } else {
            double re = pj.contains("re") ? pj.at("re").get<double>() : 0.0;
            double im = pj.contains("im") ? pj.at("im").get<double>() : 0.0;
            pieces.push_back(make_piece(std::move(lo), std::move(hi), cplx(re, im)));
        }
    }
    return torus ? make_torus_profile(std::move(pieces)) : make_real_profile(std::move(pieces));
}

struct JanssenDescriptor {
    StepProfile g, h;
    Rat a, b;
};

inline JanssenDescriptor janssen_from_json(const njson& j) {
    JanssenDescriptor desc;
    desc.a = rational_from_json(require_field(j, "a"));
    desc.b = rational_from_json(require_field(j, "b"));
    desc.g = profile_from_json(require_field(j, "g"));
    desc.h = profile_from_json(require_field(j, "h"));
    return desc;
}

/// K set: explicit dual-group elements, returned as canonical indices.
inline std::vector<long long> kset_from_json(const Group& dual, const njson& j) {
    const njson& elems = require_field(j, "elements");
    if (!elems.is_array()) throw InvalidInput("'elements' must be an array");
    std::vector<long long> out;
    for (const njson& e : elems) out.push_back(dual.index_of(dual.reduce(element_from_json(e))));
    return out;
}

/// Deterministic JSON rendering: fixed key order, %.17g floats, no locale
/// dependence. Reports are diffable byte for byte across runs.
namespace jsonw {

inline std::string dbl(double v) {
    if (std::isnan(v)) return "\"nan\"";
    if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string str(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    out += "\"";
    return out;
}

inline std::string boolean(bool b) { return b ? "true" : "false"; }
inline std::string rat(const Rat& r) { return str(format_rational(r)); }

inline std::string element(const Element& e) {
    std::string out = "[";
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(e[i]);
    }
    return out + "]";
}

inline std::string cpx(const cplx& v) { return "[" + dbl(v.real()) + "," + dbl(v.imag()) + "]"; }

template <typename It, typename Fn>
inline std::string array(It begin, It end, Fn render) {
    std::string out = "[";
    bool first = true;
    for (It it = begin; it != end; ++it) {
        if (!first) out += ",";
        first = false;
        out += render(*it);
    }
    return out + "]";
}

struct Obj {
    std::string out = "{";
    bool first = true;

    Obj& field(const char* key, const std::string& rendered) {
        if (!first) out += ",";
        first = false;
        out += str(key);
        out += ":";
        out += rendered;
        return *this;
    }
    std::string close() { return out + "}"; }
};

}  // namespace jsonw

/// Worst n entries by residual (0 keeps all), re-emitted in the original
/// table order so output stays deterministic.
inline std::vector<std::size_t> worst_entries(const TAlphaReport& rep, std::size_t top) {
    std::vector<std::size_t> idx(rep.entries.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    if (top == 0 || top >= idx.size()) return idx;
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return rep.entries[a].residual > rep.entries[b].residual;
    });
    idx.resize(top);
    std::sort(idx.begin(), idx.end());
    return idx;
}

inline std::string talpha_report_json(const TAlphaReport& rep, std::size_t top = 0) {
    std::vector<std::size_t> picked = worst_entries(rep, top);
    std::string entries = jsonw::array(picked.begin(), picked.end(), [&](std::size_t i) {
        const TAlphaEntry& e = rep.entries[i];
        return jsonw::Obj{}
            .field("alpha", jsonw::element(e.alpha))
            .field("omega", jsonw::element(e.omega))
            .field("t", jsonw::cpx(e.t))
            .field("residual", jsonw::dbl(e.residual))
            .close();
    });
    return jsonw::Obj{}
        .field("condition", jsonw::str(rep.condition))
        .field("tolerance", jsonw::dbl(rep.tolerance))
        .field("max_residual", jsonw::dbl(rep.max_residual))
        .field("pass", jsonw::boolean(rep.pass))
        .field("lic_sum_g", jsonw::dbl(rep.lic_sum_g))
        .field("lic_sum_h", jsonw::dbl(rep.lic_sum_h))
        .field("entries_total", std::to_string(rep.entries.size()))
        .field("entries", entries)
        .close();
}

inline std::string condition_report_json(const ConditionReport& rep) {
    jsonw::Obj obj;
    obj.field("condition", jsonw::str(rep.condition))
        .field("terms", jsonw::array(rep.terms.begin(), rep.terms.end(),
                                     [](double t) { return jsonw::dbl(t); }))
        .field("partial_sums", jsonw::array(rep.partial_sums.begin(), rep.partial_sums.end(),
                                            [](double t) { return jsonw::dbl(t); }))
        .field("divergence_flag", jsonw::boolean(rep.divergence_flag));
    if (!rep.value_at.empty())
        obj.field("value_at", jsonw::array(rep.value_at.begin(), rep.value_at.end(), [](const auto& p) {
                      return jsonw::Obj{}
                          .field("omega", jsonw::element(p.first))
                          .field("value", jsonw::dbl(p.second))
                          .close();
                  }));
    return obj.close();
}

inline std::string verdict_json(const Verdict& v, std::size_t top = 0) {
    jsonw::Obj obj;
    obj.field("command", jsonw::str(v.command))
        .field("input_digest", jsonw::str(v.input_digest))
        .field("condition", jsonw::str(v.condition))
        .field("pass", jsonw::boolean(v.pass))
        .field("tolerance", jsonw::dbl(v.tolerance))
        .field("max_residual", jsonw::dbl(v.max_residual));
    if (v.spectral_residual) obj.field("spectral_residual", jsonw::dbl(*v.spectral_residual));
    if (v.bounds)
        obj.field("bounds", jsonw::Obj{}
                                .field("lower", jsonw::dbl(v.bounds->lower))
                                .field("upper", jsonw::dbl(v.bounds->upper))
                                .close());
    if (!v.extras.empty()) {
        jsonw::Obj extras;
        for (const auto& [key, val] : v.extras) extras.field(key.c_str(), jsonw::dbl(val));
        obj.field("extras", extras.close());
    }
    if (v.talpha_details) obj.field("details", talpha_report_json(*v.talpha_details, top));
    return obj.close();
}

inline std::string exact_piece_json(const ExactPiece& p) {
    jsonw::Obj obj;
    obj.field("lo", jsonw::rat(p.lo))
        .field("hi", jsonw::rat(p.hi))
        .field("re", jsonw::dbl(p.val.real()))
        .field("im", jsonw::dbl(p.val.imag()));
    if (p.exact_re) obj.field("exact_re", jsonw::rat(*p.exact_re));
    return obj.close();
}

inline std::string exact_step_json(const ExactStep& f) {
    return jsonw::Obj{}
        .field("domain", jsonw::str(f.domain == Domain::torus ? "torus" : "real"))
        .field("pieces",
               jsonw::array(f.pieces.begin(), f.pieces.end(), [](const ExactPiece& p) { return exact_piece_json(p); }))
        .close();
}

inline std::string ex_0402e_json(const Ex0402eReport& rep) {
    auto rats = [](const std::vector<Rat>& v) {
        return jsonw::array(v.begin(), v.end(), [](const Rat& r) { return jsonw::rat(r); });
    };
    return jsonw::Obj{}
        .field("example", jsonw::str("ex-0402e"))
        .field("N", std::to_string(rep.n))
        .field("j_max", std::to_string(rep.j_max))
        .field("lic_terms", rats(rep.lic_terms))
        .field("lic_divergent", jsonw::boolean(rep.lic_divergent))
        .field("alpha_lic_terms", rats(rep.alpha_lic_terms))
        .field("alpha_lic_partial", jsonw::rat(rep.alpha_lic_partial))
        .field("alpha_lic_tail", jsonw::rat(rep.alpha_lic_tail))
        .field("cc_lower_partial", jsonw::rat(rep.cc_lower_partial))
        .field("cc_upper_partial", jsonw::rat(rep.cc_upper_partial))
        .field("cc_tail", jsonw::rat(rep.cc_tail))
        .field("t0_partial", jsonw::rat(rep.t0_partial))
        .field("t0_tail", jsonw::rat(rep.t0_tail))
        .field("offdiagonal_exact_zero", jsonw::boolean(rep.offdiagonal_exact_zero))
        .close();
}

inline std::string reordered_onb_json(const ReorderedOnbReport& rep) {
    jsonw::Obj obj;
    obj.field("example", jsonw::str("ex-reordered-onb"))
        .field("N", std::to_string(rep.n))
        .field("k", std::to_string(rep.k))
        .field("j_star", std::to_string(rep.j_star))
        .field("t", jsonw::cpx(rep.value));
    if (rep.exact_re) obj.field("exact_re", jsonw::rat(*rep.exact_re));
    obj.field("characterization_applies", jsonw::boolean(rep.characterization_applies));
    return obj.close();
}

inline std::string wavelet_talpha_json(const WaveletTalpha& rep) {
    return jsonw::Obj{}
        .field("j_lo", std::to_string(rep.j_lo))
        .field("j_hi", std::to_string(rep.j_hi))
        .field("tail_bound", jsonw::dbl(rep.tail_bound))
        .field("profile", exact_step_json(rep.profile))
        .close();
}

inline std::string calderon_sides_json(const CalderonSides& sides) {
    return jsonw::Obj{}
        .field("xi_positive", jsonw::dbl(sides.xi_positive))
        .field("xi_negative", jsonw::dbl(sides.xi_negative))
        .field("min_side", jsonw::dbl(sides.min_side))
        .field("max_side", jsonw::dbl(sides.max_side))
        .close();
}

inline std::string janssen_json(const JanssenResult& res) {
    return jsonw::Obj{}
        .field("condition", jsonw::str("janssen"))
        .field("pass", jsonw::boolean(res.pass))
        .field("tolerance", jsonw::dbl(res.tolerance))
        .field("max_residual", jsonw::dbl(res.max_residual))
        .field("exact", jsonw::boolean(res.exact))
        .field("rows", jsonw::array(res.rows.begin(), res.rows.end(), [](const JanssenRow& row) {
                   return jsonw::Obj{}
                       .field("alpha", jsonw::rat(row.alpha))
                       .field("target", jsonw::rat(row.target))
                       .field("residual", jsonw::dbl(row.residual))
                       .field("exact", jsonw::boolean(row.exact))
                       .field("sum", exact_step_json(row.sum))
                       .close();
               }))
        .close();
}

/// CSV and gnuplot emitters for the residual tables.

inline std::string coords_joined(const Element& e) {
    std::string out;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (i) out += ";";
        out += std::to_string(e[i]);
    }
    return out;
}

inline std::string talpha_report_csv(const TAlphaReport& rep, std::size_t top = 0) {
    std::string out = "alpha,omega,t_re,t_im,residual\n";
    for (std::size_t i : worst_entries(rep, top)) {
        const TAlphaEntry& e = rep.entries[i];
        char buf[120];
        std::snprintf(buf, sizeof buf, ",%.17g,%.17g,%.17g\n", e.t.real(), e.t.imag(), e.residual);
        out += coords_joined(e.alpha) + "," + coords_joined(e.omega) + buf;
    }
    return out;
}

inline std::string condition_report_csv(const ConditionReport& rep) {
    std::string out = "layer,term,partial_sum\n";
    for (std::size_t j = 0; j < rep.terms.size(); ++j) {
        char buf[80];
        std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g\n", j + 1, rep.terms[j], rep.partial_sums[j]);
        out += buf;
    }
    return out;
}

inline std::string talpha_gnuplot(const TAlphaReport& rep) {
    std::string out = "# index residual\n";
    for (std::size_t i = 0; i < rep.entries.size(); ++i) {
        char buf[60];
        std::snprintf(buf, sizeof buf, "%zu %.17g\n", i, rep.entries[i].residual);
        out += buf;
    }
    return out;
}

}  // namespace gti
