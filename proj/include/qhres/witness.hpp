#ifndef QHRES_WITNESS_HPP
#define QHRES_WITNESS_HPP

#include "qhres/numint.hpp"
#include "qhres/residue.hpp"

namespace qhres::numint {

struct ResidueIntegral {
    residue::SecondResidue second;
    CurveTrace trace;
    Integral integral;
};

/// Trace step for a resolution of `steps`: 8R / steps for escape radius R.
inline double step_for(int steps, const TraceOptions& opt = {}) {
    if (steps <= 0) throw ArgumentError("step count must be positive");
    return 8.0 * opt.escape_radius / steps;
}

/// Integral of the second residue of (g/s) dz0 /\ dz1 /\ dz2 over the real
/// branch of {s~ = 0} through the first seed found, traced at resolution
/// `steps`.
inline ResidueIntegral integrate_second_residue(const Polynomial& g, const Polynomial& s,
                                                const weights::WeightSystem& w, int steps,
                                                const TraceOptions& opt = {}) {
    if (s.nvars() != 3) throw ArgumentError("the residue integral needs exactly three variables");
    auto second = residue::second_residue(g, s, w);
    if (second.is_zero()) throw DomainError("second residue vanishes; nothing to integrate");
    auto seed = find_seed(second.s_tilde);
    if (!seed) throw NumericError("no smooth real point found on " + algebra::to_string(second.s_tilde));
    double h = step_for(steps, opt);
    auto trace = trace_real_curve(second.s_tilde, *seed, h, 8 * steps, opt);
    auto integral = integrate_1form(second.residue.form, trace);
    return {std::move(second), std::move(trace), integral};
}

} // namespace qhres::numint

#endif // QHRES_WITNESS_HPP
