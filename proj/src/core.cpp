#include "vk/core.hpp"

namespace vk {

UnitSystem::UnitSystem(double c_, double hbar_, double kB_) : c(c_), hbar(hbar_), kB(kB_) {
    require(c > 0 && hbar > 0 && kB > 0, "UnitSystem: c, hbar and kB must be positive");
}

AtomSpec::AtomSpec(double omega0_, double alpha0_) : omega0(omega0_), alpha0(alpha0_) {
    require(omega0 > 0, "AtomSpec: omega0 must be positive");
    require(alpha0 > 0, "AtomSpec: alpha0 must be positive");
}

void Tolerances::validate() const {
    require(rel_tol > 0 && abs_tol > 0, "Tolerances: rel_tol and abs_tol must be positive");
    require(epsilon_regulator > 0, "Tolerances: epsilon_regulator must be positive");
    require(richardson_levels >= 2, "Tolerances: richardson_levels must be >= 2");
    require(max_evaluations > 0, "Tolerances: max_evaluations must be positive");
}

double to_dimensionless(const AtomSpec& spec, double R, const UnitSystem& units) {
    require(R > 0, "to_dimensionless: distance must be positive");
    return R * spec.omega0 / units.c;
}

double from_dimensionless(double rho, const AtomSpec& spec, const UnitSystem& units) {
    require(rho > 0, "from_dimensionless: rho must be positive");
    return rho * units.c / spec.omega0;
}

}  // namespace vk
