// SPDX-License-Identifier: MIT
#include "stieltjes/spec_io.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace stieltjes {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::parse, what); }

double parse_plain(const std::string& text) {
    double v = 0.0;
    const char* first = text.data();
    const char* last = first + text.size();
    while (first < last && *first == ' ') ++first;
    while (last > first && last[-1] == ' ') --last;
    if (first < last && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) bad("not a number: '" + text + "'");
    return v;
}

double number(const json& j, const char* field) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) return parse_number(j.get<std::string>());
    bad(std::string("field '") + field + "' must be a number or a rational string");
}

const json& need(const json& obj, const char* field) {
    if (!obj.is_object() || !obj.contains(field)) bad(std::string("missing field '") + field + "'");
    return obj.at(field);
}

JumpFamily parse_family(const json& f) {
    const double acc = number(need(f, "accumulation"), "accumulation");
    const auto side_text = need(f, "side").get<std::string>();
    Side side;
    if (side_text == "right-of" || side_text == "right_of") {
        side = Side::right_of;
    } else if (side_text == "left-of" || side_text == "left_of") {
        side = Side::left_of;
    } else {
        bad("family side must be 'left-of' or 'right-of'");
    }
    const json& pj = need(f, "position");
    if (pj.contains("form") && pj.at("form").get<std::string>() != "power") bad("position form must be 'power'");
    PositionRule pos{number(need(pj, "c"), "c"), pj.contains("p") ? number(pj.at("p"), "p") : 1.0};
    const json& mj = need(f, "mass");
    MassRule mass;
    const auto form = need(mj, "form").get<std::string>();
    mass.s = number(need(mj, "s"), "s");
    if (form == "geometric") {
        mass.form = MassRule::Form::geometric;
        mass.q = number(need(mj, "q"), "q");
    } else if (form == "power") {
        mass.form = MassRule::Form::power;
        mass.p = number(need(mj, "p"), "p");
    } else {
        bad("mass form must be 'geometric' or 'power'");
    }
    const std::int64_t n_start = f.contains("n_start") ? f.at("n_start").get<std::int64_t>() : 1;
    return JumpFamily(acc, side, pos, mass, n_start);
}

}  // namespace

double parse_number(const std::string& text) {
    const auto slash = text.find('/');
    if (slash == std::string::npos) return parse_plain(text);
    const double num = parse_plain(text.substr(0, slash));
    const double den = parse_plain(text.substr(slash + 1));
    if (den == 0.0) bad("zero denominator in '" + text + "'");
    return num / den;
}

DerivatorFile parse_derivator(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        bad(e.what());
    }
    if (!doc.is_object()) bad("derivator file must hold an object");
    try {
        std::vector<Segment> segments;
        std::vector<Atom> atoms;
        std::vector<JumpFamily> families;
        for (const auto& s : doc.value("segments", json::array()))
            segments.push_back({number(need(s, "from"), "from"), number(need(s, "slope"), "slope")});
        for (const auto& a : doc.value("atoms", json::array()))
            atoms.push_back({number(need(a, "at"), "at"), number(need(a, "mass"), "mass")});
        for (const auto& f : doc.value("families", json::array())) families.push_back(parse_family(f));
        std::map<std::string, std::string> exprs;
        const json named = doc.value("expressions", json::object());
        for (const auto& [k, v] : named.items()) exprs[k] = v.get<std::string>();
        std::optional<Interval> dom;
        if (doc.contains("domain")) {
            const json& d = doc.at("domain");
            if (!d.is_array() || d.size() != 2) bad("domain must be [a, b]");
            dom = Interval(number(d[0], "domain"), number(d[1], "domain"));
        }
        return {Derivator(doc.value("name", std::string("g")), std::move(segments), std::move(atoms),
                          std::move(families)),
                std::move(exprs), dom};
    } catch (const json::exception& e) {
        bad(e.what());
    }
}

DerivatorFile load_derivator(const std::string& path) {
    namespace fs = std::filesystem;
    fs::path p(path);
    if (!fs::is_regular_file(p)) p = fs::path(path + ".json");
    std::ifstream in(p);
    if (!in) bad("cannot open derivator file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_derivator(ss.str());
}

}  // namespace stieltjes
