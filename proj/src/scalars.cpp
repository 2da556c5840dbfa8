#include "cartankit/scalars.hpp"

#include <cstdlib>
#include <string>

namespace cartankit {

double default_tol() {
    static const double tol = [] {
        if (const char* env = std::getenv("CARTANKIT_TOL")) {
            try {
                double v = std::stod(env);
                if (v > 0.0) return v;
            } catch (...) {
                // fall through to the default
            }
        }
        return 1e-9;
    }();
    return tol;
}

} // namespace cartankit
