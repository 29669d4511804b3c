#pragma once

// The torsion class T = { M : ker(M -> M ⊗ Z) = M } over Z[x], where Z is
// the module Z[x]/(x). On principal ideals M = (g), T(M) = M x = (g x).
// It is neither hereditary nor closed under derivations.

#include "hdq/operators.hpp"
#include "hdq/report.hpp"
#include "hdq/ring.hpp"

#include <vector>

namespace hdq {

/// Content-aware lcm in Z[x], positive leading coefficient.
Poly zx_lcm(const Poly& a, const Poly& b);
/// (a) ∩ (b) in Z[x].
PrincipalIdeal zx_intersect(const PrincipalIdeal& a, const PrincipalIdeal& b);

struct TensorWithZ {
    PrincipalIdeal module;  // M = (g)
    PrincipalIdeal kernel;  // M x = (g x), the kernel of M -> M ⊗ Z
    /// M ⊗ Z = M / M x is Z, generated by the class of g.
    Poly quotient_generator;
};

/// Throws std::invalid_argument unless the generator lives in Z[x] and is nonzero.
TensorWithZ tensor_with_Z(const PrincipalIdeal& module);

/// T(M) for principal M; applying it k times gives (g x^k).
PrincipalIdeal torsion_part(const PrincipalIdeal& module);

/// g p lies in the kernel exactly when p(0) = 0, on sampled principal M and p.
CheckReport tensor_identity_check(const SampleSpec& spec);

/// T(I) = (x^2) differs from I ∩ T(R) = (x); x is the witness.
CheckReport hereditary_violation_check();

/// d/dx is a derivation on Z[x] (sampled), x ∈ T(R) but d/dx(x) = 1 ∉ T(R).
CheckReport derivative_escape_check(const SampleSpec& spec);

}  // namespace hdq
