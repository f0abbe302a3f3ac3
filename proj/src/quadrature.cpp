#include "asw/quadrature.hpp"

namespace asw {

QuadratureRule split_simpson(const PotentialGeometry& geom, int panels)
{
    if (panels < 2 || panels % 2 != 0) {
        throw DomainError("Simpson rule needs an even number of panels");
    }
    const double breaks[5] = {-geom.a(), -geom.b(), 0.0, geom.b(), geom.a()};
    QuadratureRule rule;
    rule.nodes.reserve(4 * (panels + 1));
    rule.weights.reserve(4 * (panels + 1));
    for (int s = 0; s < 4; ++s) {
        const double lo = breaks[s];
        const double hi = breaks[s + 1];
        const double h = (hi - lo) / panels;
        for (int i = 0; i <= panels; ++i) {
            const double x = i == panels ? hi : lo + h * i;
            double w = (i == 0 || i == panels) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
            rule.nodes.push_back(x);
            rule.weights.push_back(w * h / 3.0);
        }
    }
    return rule;
}

}  // namespace asw
