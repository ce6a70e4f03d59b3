#pragma once

// Four-valued plausible truth.

#include "plogic/engine.hpp"

namespace plogic {

/// a: ambiguous, t: usually true, f: usually false, u: undetermined.
enum class TruthValue : unsigned char { a, t, f, u };

inline char to_char(TruthValue v) {
    switch (v) {
    case TruthValue::a: return 'a';
    case TruthValue::t: return 't';
    case TruthValue::f: return 'f';
    case TruthValue::u: return 'u';
    }
    return '?';
}

/// "Not provable" is read as P = -1, which is sound because grounding is
/// finite and P is therefore total.
inline TruthValue truth_value(Evaluator& ev, Algorithm alg, const Formula& f) {
    const bool yes = ev.prove(alg, f) == ProofValue::plus;
    const bool no = ev.prove(alg, negate(f)) == ProofValue::plus;
    if (yes && no) return TruthValue::a;
    if (yes) return TruthValue::t;
    if (no) return TruthValue::f;
    return TruthValue::u;
}

inline TruthValue truth_value(const PlausibleDescription& d, Algorithm alg, const Formula& f) {
    Evaluator ev(d);
    return truth_value(ev, alg, f);
}

}  // namespace plogic
