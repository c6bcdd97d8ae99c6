#pragma once

namespace oracle {

/// Edge x0 (first zero of F) of the TF trajectory with F(0) = 1, F'(0) = -B,
/// by bisection on the end point of controlled Rosenbrock integrations.
/// Its global error falls only like sqrt(tol); at the fixed tolerance used
/// x0 is good to about 1e-4 relative. Returns -1 if F stays positive up to x = 1e4.
double rosenbrock_edge(double B);

}  // namespace oracle
