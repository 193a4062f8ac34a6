#ifndef QHRES_VERDICT_HPP
#define QHRES_VERDICT_HPP

#include <optional>
#include <string>
#include <vector>

#include "qhres/residue.hpp"

namespace qhres::criteria {

enum class Verdict { Lifts, Obstructed, Inconclusive };

inline std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::Lifts: return "LIFTS";
    case Verdict::Obstructed: return "OBSTRUCTED";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
    }
    return "?";
}

/// Local data (s, g, weights) at one singular point; omega = (g/s) dz_0 /\ ... /\ dz_n.
struct SingularPoint {
    Polynomial s;
    Polynomial g;
    WeightSystem weights;
};

struct PointVerdict {
    Verdict verdict;
    Condition2Result condition2;
    std::optional<residue::SecondResidue> second_residue; // set when OBSTRUCTED
};

struct LiftVerdict {
    Verdict verdict;
    std::vector<PointVerdict> points;
};

/// Verdict at one point: LIFTS when Condition 2 holds; otherwise OBSTRUCTED
/// when g has a nonzero component of weight 1 - kappa (the second residue is
/// attached) and INCONCLUSIVE when it has none.
inline PointVerdict point_verdict(const SingularPoint& p) {
    require_normalized(p.s, p.weights);
    p.s.check_same(p.g);
    if (algebra::divides(p.s, p.g)) throw DomainError("removable pole: s divides g");
    PointVerdict out{Verdict::Lifts, condition2(p.weights), std::nullopt};
    if (out.condition2.holds) return out;
    if (!theorem7_obstruction(p.s, p.g, p.weights).nonzero) {
        out.verdict = Verdict::Inconclusive;
        return out;
    }
    out.second_residue = residue::second_residue(p.g, p.s, p.weights);
    if (out.second_residue->is_zero()) throw std::logic_error("obstruction without a nonzero second residue");
    out.verdict = Verdict::Obstructed;
    return out;
}

/// Combines the point verdicts: any OBSTRUCTED point makes the whole form
/// obstructed, otherwise any INCONCLUSIVE point makes it inconclusive.
inline LiftVerdict theorem4_verdict(const std::vector<SingularPoint>& points) {
    LiftVerdict out{Verdict::Lifts, {}};
    for (const auto& p : points) {
        out.points.push_back(point_verdict(p));
        Verdict v = out.points.back().verdict;
        if (v == Verdict::Obstructed) out.verdict = Verdict::Obstructed;
        else if (v == Verdict::Inconclusive && out.verdict == Verdict::Lifts) out.verdict = Verdict::Inconclusive;
    }
    return out;
}

} // namespace qhres::criteria

#endif // QHRES_VERDICT_HPP
