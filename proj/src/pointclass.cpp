// SPDX-License-Identifier: MIT
#include "stieltjes/pointclass.hpp"

#include <sstream>

namespace stieltjes {

void require_valid_domain(const Derivator& g, const Interval& dom, DomainMode mode) {
    const auto v = g.validate_domain(dom, mode);
    if (v.empty()) return;
    std::ostringstream os;
    os << "[" << dom.a << ", " << dom.b << "] is not admissible:";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : " ") << to_string(v[i]);
    throw Error(ErrorKind::invalid_domain, os.str());
}

PointClassification classify_unchecked(const Derivator& g, double t, const Interval& dom) {
    if (!dom.contains(t)) {
        std::ostringstream os;
        os << t << " not in [" << dom.a << ", " << dom.b << "]";
        throw Error(ErrorKind::out_of_domain, os.str());
    }
    const auto s = g.local(t);
    const bool has_left = t > dom.a;
    const bool has_right = t < dom.b;

    PointClassification c;
    c.in_Dg = s.in_Dg;
    c.in_Cg = s.in_Cg;
    c.in_Ng_minus = s.in_Ng_minus();
    c.in_Ng_plus = s.in_Ng_plus();
    if (c.in_Cg) c.component = std::pair{s.run_left, s.run_right};

    c.acc_Dg_left = has_left && s.acc_D_left;
    c.acc_Dg_right = has_right && s.acc_D_right;
    // Derived set of C_g: a constant stretch touching t or a chain of components.
    c.acc_Cg_left = has_left && (s.left_constant || s.chain_left);
    c.acc_Cg_right = has_right && (s.right_constant || s.chain_right);

    const bool in_N = c.in_Ng_minus || c.in_Ng_plus;
    const bool plain = !c.in_Cg && !in_N && !c.in_Dg;
    c.in_D1 = c.in_Ng_minus && c.acc_Dg_left;
    c.in_D2 = c.in_Ng_plus && c.acc_Dg_right;
    c.in_D3 = !in_N && !c.in_Dg && (c.acc_Dg_left || c.acc_Dg_right);
    c.in_tD1 = c.in_Ng_minus && !c.acc_Dg_left;
    c.in_tD2 = (c.in_Ng_plus || c.in_Dg) && !c.acc_Dg_right;
    c.in_tD3 = plain && !c.acc_Dg_left && !c.acc_Dg_right;
    c.in_C1 = c.in_Ng_minus && c.acc_Cg_left;
    c.in_C2 = (c.in_Ng_plus || c.in_Dg) && c.acc_Cg_right;
    c.in_C3 = plain && (c.acc_Cg_left || c.acc_Cg_right);

    c.star = c.in_Cg ? s.run_right : t;
    const auto [lo, hi] = g.level_set(t, dom);
    c.level_inf = lo;
    c.level_sup = hi;
    c.in_Ag = g.jump(hi) > 0.0;
    c.in_Hg = (c.in_Cg && g.jump(s.run_left) > 0.0 && g.jump(s.run_right) > 0.0) ||
              (c.in_Dg && s.left_constant && g.jump(s.run_left) > 0.0);
    return c;
}

PointClassification classify(const Derivator& g, double t, const Interval& dom) {
    if (!dom.contains(t)) return classify_unchecked(g, t, dom);
    require_valid_domain(g, dom, DomainMode::derivative);
    return classify_unchecked(g, t, dom);
}

}  // namespace stieltjes
