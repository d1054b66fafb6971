// SPDX-License-Identifier: MIT
// Report building shared by the CLI commands: everything goes into one
// ordered JSON document, printed either as JSON or as indented text.
#pragma once

#include "stieltjes/oracle.hpp"
#include "stieltjes/pointclass.hpp"

#include <json.hpp>

#include <charconv>
#include <iostream>
#include <string>

namespace cli {

using ojson = nlohmann::ordered_json;

// zero threshold for side-condition limits, relative tolerance of the
// symbolic-vs-oracle comparison, and the exact-equality tolerances
inline constexpr double limit_zero = 1e-6;
inline constexpr double compare_rel = 1e-5;
inline constexpr double exact_tol = 1e-12;

inline ojson config_block() {
    const stieltjes::OracleConfig oc;
    const stieltjes::ContinuityConfig cc;
    ojson levels = ojson::array();
    for (const auto& l : oc.levels)
        levels.push_back({{"window", l.window}, {"max_samples", l.max_samples}, {"rel", l.rel}, {"abs", l.abs},
                          {"diverge_at", l.diverge_at}});
    return {{"limit_levels", levels},
            {"continuity",
             {{"levels", cc.levels},
              {"delta", "2^-(4k)"},
              {"grid", cc.grid},
              {"geometric", cc.geometric},
              {"jump_cap", cc.jump_cap},
              {"tol", cc.tol},
              {"level_tol", cc.level_tol}}},
            {"limit_zero", limit_zero},
            {"compare_rel", compare_rel},
            {"exact_tol", exact_tol}};
}

inline std::string num(double x) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
}

inline ojson limit_json(const stieltjes::LimitResult& r, bool with_trace) {
    ojson j{{"verdict", stieltjes::to_string(r.verdict)}};
    if (r.converged()) j["value"] = r.value;
    if (r.verdict == stieltjes::Verdict::diverges) j["sign"] = r.sign;
    if (r.inconclusive) j["inconclusive"] = true;
    if (!r.note.empty()) j["note"] = r.note;
    j["samples"] = r.evidence.size();
    if (with_trace) {
        ojson ev = ojson::array();
        for (const auto& e : r.evidence) ev.push_back({{"sequence", e.sequence}, {"offset", e.offset}, {"value", e.value}});
        j["trace"] = ev;
    }
    return j;
}

inline ojson class_json(const stieltjes::PointClassification& c) {
    ojson j{{"in_Cg", c.in_Cg},           {"in_Dg", c.in_Dg},
            {"in_Ng_minus", c.in_Ng_minus}, {"in_Ng_plus", c.in_Ng_plus},
            {"acc_Dg_left", c.acc_Dg_left}, {"acc_Dg_right", c.acc_Dg_right},
            {"acc_Cg_left", c.acc_Cg_left}, {"acc_Cg_right", c.acc_Cg_right},
            {"D1", c.in_D1},                {"D2", c.in_D2},
            {"D3", c.in_D3},                {"tD1", c.in_tD1},
            {"tD2", c.in_tD2},              {"tD3", c.in_tD3},
            {"C1", c.in_C1},                {"C2", c.in_C2},
            {"C3", c.in_C3},                {"in_Ag", c.in_Ag},
            {"in_Hg", c.in_Hg},             {"star", c.star},
            {"level_set", {c.level_inf, c.level_sup}}};
    if (c.component) j["component"] = {c.component->first, c.component->second};
    return j;
}

inline void render_text(std::ostream& os, const ojson& j, int indent) {
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    const auto scalar = [](const ojson& v) -> std::string {
        if (v.is_string()) return v.get<std::string>();
        if (v.is_number_float()) return num(v.get<double>());
        return v.dump();
    };
    const auto flat = [&](const ojson& v) {
        if (!v.is_array()) return false;
        for (const auto& x : v)
            if (x.is_structured()) return false;
        return true;
    };
    const auto inline_array = [&](const ojson& v) {
        std::string s = "[";
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + scalar(v[i]);
        return s + "]";
    };
    for (auto it = j.begin(); it != j.end(); ++it) {
        const ojson& v = it.value();
        if (v.is_object()) {
            os << pad << it.key() << ":\n";
            render_text(os, v, indent + 2);
        } else if (flat(v)) {
            os << pad << it.key() << ": " << inline_array(v) << "\n";
        } else if (v.is_array()) {
            os << pad << it.key() << ":\n";
            for (const auto& x : v) {
                if (x.is_object()) {
                    os << pad << "  -\n";
                    render_text(os, x, indent + 4);
                } else {
                    os << pad << "  - " << (flat(x) ? inline_array(x) : scalar(x)) << "\n";
                }
            }
        } else {
            os << pad << it.key() << ": " << scalar(v) << "\n";
        }
    }
}

/// Prints the report with the tolerance block first.
inline void emit(const ojson& body, bool as_json) {
    ojson doc{{"config", config_block()}};
    for (auto it = body.begin(); it != body.end(); ++it) doc[it.key()] = it.value();
    if (as_json) {
        std::cout << doc.dump(2) << "\n";
    } else {
        render_text(std::cout, doc, 0);
    }
}

}  // namespace cli
