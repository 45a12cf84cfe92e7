#pragma once

namespace nunokawa {

// One zero-detection policy for the whole library: below tol_zero a quotient
// has fewer than ~4 trustworthy digits in double precision.
inline constexpr double tol_zero = 1e-12;

// Contact search layers, two digits of slack between successive layers so a
// tolerance miss at one layer cannot cascade into the next.
inline constexpr double tol_radius = 1e-12;   // bisection width on the radius
inline constexpr double tol_contact = 1e-10;  // admitted |Re p(z0) - alpha|
inline constexpr double tol_beta = 1e-8;      // degeneracy threshold on Im p(z0)

// Identity checks at a contact: the contact residual (1e-10) amplifies
// through one derivative and one quotient, a hundredfold slack absorbs it.
inline constexpr double tol_identity = 1e-8;

// Bisection ceiling: the open disk has no boundary circle, contacts must be
// strictly interior.
inline constexpr double r_max_default = 1.0 - 1e-9;

}  // namespace nunokawa
