#include "qv/harness/report.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace qv::harness {

const Cx* find_param(const ParamMap& pm, const std::string& name) {
    for (const auto& kv : pm)
        if (kv.first == name) return &kv.second;
    return nullptr;
}

Cx require_param(const ParamMap& pm, const std::string& name) {
    const Cx* p = find_param(pm, name);
    if (!p) throw std::invalid_argument("missing parameter '" + name + "'");
    return *p;
}

namespace {

void emit_double(std::string& out, double v) {
    if (std::isnan(v)) {
        out += "\"nan\"";
        return;
    }
    if (std::isinf(v)) {
        out += v > 0 ? "\"inf\"" : "\"-inf\"";
        return;
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
}

void emit_complex(std::string& out, Cx z) {
    out += "{\"re\": ";
    emit_double(out, z.real());
    out += ", \"im\": ";
    emit_double(out, z.imag());
    out += "}";
}

void emit_string(std::string& out, const std::string& s) {
    out += '"';
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
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
    out += '"';
}

} // namespace

std::string to_json(const IdentityReport& rep) {
    std::string out;
    out += "{\"id\": ";
    emit_string(out, rep.id);
    out += ", \"params\": {";
    bool first = true;
    for (const auto& kv : rep.params) {
        if (!first) out += ", ";
        first = false;
        emit_string(out, kv.first);
        out += ": ";
        emit_complex(out, kv.second);
    }
    out += "}, \"q\": ";
    emit_complex(out, rep.q);
    out += ", \"lhs\": ";
    emit_complex(out, rep.lhs);
    out += ", \"rhs\": ";
    emit_complex(out, rep.rhs);
    out += ", \"abs_residual\": ";
    emit_double(out, rep.abs_residual);
    out += ", \"rel_residual\": ";
    emit_double(out, rep.rel_residual);
    out += ", \"tol\": ";
    emit_double(out, rep.tol);
    out += ", \"pass\": ";
    out += rep.pass ? "true" : "false";
    out += ", \"lhs_err_estimate\": ";
    emit_double(out, rep.lhs_err_estimate);
    out += ", \"diagnostics\": [";
    first = true;
    for (const auto& d : rep.diagnostics) {
        if (!first) out += ", ";
        first = false;
        emit_string(out, d);
    }
    out += "]}";
    return out;
}

std::string to_json(const std::vector<IdentityReport>& reps) {
    std::string out = "[";
    for (std::size_t i = 0; i < reps.size(); ++i) {
        if (i) out += ",\n ";
        out += to_json(reps[i]);
    }
    out += "]";
    return out;
}

} // namespace qv::harness
