#pragma once

namespace sskdv {

/// Gamma function on the real line (poles excluded), Lanczos approximation.
/// Relative accuracy is ~1e-15 on (0, 30), which covers every closed form
/// used in this project.
double gamma_fn(double z);

/// log |Gamma(z)| for z > 0.
double log_gamma(double z);

} // namespace sskdv
