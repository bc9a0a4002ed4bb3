#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dalg/calculus.hpp"

namespace dalg {

class NotPbwError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Throws NotPbwError unless the presentation passes the diamond checks.
int gk_dimension(const Presentation& p);

enum class Verdict { Smooth, NotSmooth, Undetermined };
std::string to_string(Verdict v);

struct Obstruction {
    int i = 0;
    int t = 0;
    Poly residual;
};

struct SmoothnessVerdict {
    Verdict verdict = Verdict::Undetermined;
    std::optional<TheoremCase> theorem_case;
    std::optional<AutomorphismFamily> witness;
    std::optional<Obstruction> obstruction;
    std::vector<std::string> notes;
    Decomposition dec;
    FamilyIdentification fam;
};

SmoothnessVerdict decide_smoothness(const Presentation& p);

struct VerificationBounds {
    int dd = 4;
    int connected = 5;
    int form = -1;  // -1: 3 for n <= 3, 2 otherwise

    static VerificationBounds uniform(int d) { return {d, d, d}; }
    int form_bound(int n) const { return form >= 0 ? form : (n <= 3 ? 3 : 2); }
};

struct WitnessReport {
    std::vector<std::pair<std::string, bool>> checks;
    std::vector<std::string> details;
    bool ok() const;
};

// Runs every calculus check for the given family; the verdict overload requires a witness.
WitnessReport verify_witness(const Presentation& p, const AutomorphismFamily& nu, const VerificationBounds& bounds = {});
WitnessReport verify_witness(const Presentation& p, const SmoothnessVerdict& v, const VerificationBounds& bounds = {});

}  // namespace dalg
