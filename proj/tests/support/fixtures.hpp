#pragma once

// Expected nonzero components of the catalog metrics, keyed by index tuples.
// Values are expression strings in the engine grammar; everything not listed
// is expected to vanish (up to the stated symmetries).

#include <map>
#include <string>
#include <vector>

namespace fixtures {

using ComponentMap = std::map<std::vector<int>, std::string>;

// ---------------------------------------------------------------- prm tables

inline ComponentMap prm_riemann() {
    return {
        {{1, 3, 1, 3}, "-(1/2)*w_xx*x"},
        {{1, 3, 1, 4}, "-(1/2)*w_xy*x"},
        {{1, 4, 1, 4}, "-(1/2)*w_yy*x"},
    };
}

inline ComponentMap prm_ricci() {
    return {{{1, 1}, "-(1/2)*p^2*(w_xx + w_yy)*x"}};
}

inline ComponentMap prm_conformal() {
    return {
        {{1, 3, 1, 3}, "-(1/4)*(w_xx - w_yy)*x"},
        {{1, 4, 1, 4}, "(1/4)*(w_xx - w_yy)*x"},
        {{1, 3, 1, 4}, "-(1/2)*w_xy*x"},
    };
}

inline ComponentMap prm_projective() {
    return {
        {{1, 2, 1, 1}, "-(1/6)*p^2*(w_xx + w_yy)*x"},
        {{1, 3, 1, 1}, "(1/3)*p^2*r*(w_xx + w_yy)"},
        {{1, 3, 1, 3}, "-(1/6)*(2*w_xx - w_yy)*x"},
        {{1, 3, 1, 4}, "-(1/2)*w_xy*x"},
        {{1, 3, 4, 1}, "(1/2)*w_xy*x"},
        {{1, 4, 1, 3}, "-(1/2)*w_xy*x"},
        {{1, 4, 3, 1}, "(1/2)*w_xy*x"},
        {{1, 3, 3, 1}, "(1/2)*w_xx*x"},
        {{1, 4, 1, 4}, "(1/6)*(w_xx - 2*w_yy)*x"},
        {{1, 4, 4, 1}, "(1/2)*w_yy*x"},
    };
}

// derivative index last: {a,b,c,d,m} is the component "R[abcd],m"
inline ComponentMap prm_nabla_riemann() {
    return {
        {{1, 2, 1, 3, 1}, "(1/2)*p^2*w_xx"},
        {{1, 2, 1, 4, 1}, "(1/2)*p^2*w_xy"},
        {{1, 3, 1, 3, 1}, "-(x^2*w_uxx + 2*p^2*r*w_xx)/(2*x)"},
        {{1, 4, 1, 4, 1}, "(2*p^2*r*w_yy - x^2*w_uyy)/(2*x)"},
        {{1, 3, 1, 3, 3}, "(1/2)*(w_xx - w_xxx*x)"},
        {{1, 3, 1, 3, 4}, "-(1/2)*w_xxy*x"},
        {{1, 3, 1, 4, 1}, "-(1/2)*w_uxy*x"},
        {{1, 4, 1, 4, 3}, "(1/2)*(w_yy - w_xyy*x)"},
        {{1, 3, 1, 4, 3}, "(1/2)*(w_xy - w_xxy*x)"},
        {{1, 3, 1, 4, 4}, "-(1/2)*w_xyy*x"},
        {{1, 3, 3, 4, 1}, "(1/2)*w_xy"},
        {{1, 4, 1, 4, 4}, "-(1/2)*w_yyy*x"},
        {{1, 4, 3, 4, 1}, "(1/2)*w_yy"},
    };
}

inline ComponentMap prm_nabla_ricci() {
    return {
        {{1, 1, 1}, "p^2*(-x^2*w_uyy - x^2*w_uxx + 2*p^2*r*w_xx + 2*p^2*r*w_yy)/(2*x)"},
        {{1, 1, 3}, "(1/2)*p^2*(-w_xxx*x - w_xyy*x + w_xx + w_yy)"},
        {{1, 1, 4}, "-(1/2)*p^2*(w_xxy + w_yyy)*x"},
        {{1, 3, 1}, "(1/2)*p^2*(w_xx + w_yy)"},
    };
}

inline ComponentMap prm_nabla_conformal() {
    return {
        {{1, 2, 1, 3, 1}, "(1/4)*p^2*(w_xx - w_yy)"},
        {{1, 2, 1, 4, 1}, "(1/2)*p^2*w_xy"},
        {{1, 3, 1, 3, 1}, "-(-x^2*w_uyy + x^2*w_uxx + 2*p^2*r*w_xx - 2*p^2*r*w_yy)/(4*x)"},
        {{1, 3, 1, 3, 3}, "(1/4)*(-w_xxx*x + w_xyy*x + w_xx - w_yy)"},
        {{1, 4, 1, 4, 3}, "-(1/4)*(-w_xxx*x + w_xyy*x + w_xx - w_yy)"},
        {{1, 3, 1, 3, 4}, "-(1/4)*(w_xxy - w_yyy)*x"},
        {{1, 4, 1, 4, 4}, "(1/4)*(w_xxy - w_yyy)*x"},
        {{1, 3, 1, 4, 1}, "-(1/2)*w_uxy*x"},
        {{1, 3, 1, 4, 3}, "(1/2)*(w_xy - w_xxy*x)"},
        {{1, 3, 1, 4, 4}, "-(1/2)*w_xyy*x"},
        {{1, 3, 3, 4, 1}, "(1/2)*w_xy"},
        {{1, 4, 1, 4, 1}, "-(x^2*w_uyy - x^2*w_uxx + 2*p^2*r*w_xx - 2*p^2*r*w_yy)/(4*x)"},
        {{1, 4, 3, 4, 1}, "-(1/4)*(w_xx - w_yy)"},
    };
}

// The reference T[1][1] carries a spurious x^2 in the denominator: it is
// inconsistent with the field equations applied to the reference Ricci table
// (and with the reference nabla-T table). The engine value is the coherent
// one: T = (c^4/8 pi G) S for a scalar-flat metric.
inline ComponentMap prm_stress_energy() {
    return {{{1, 1}, "-(c^4*p^2*(w_xx + w_yy)*x)/(16*pi*G)"}};
}

inline ComponentMap prm_nabla_stress_energy() {
    return {
        {{1, 1, 1}, "c^4*p^2*(-x^2*w_uyy - x^2*w_uxx + 2*p^2*r*w_xx + 2*p^2*r*w_yy)/(16*pi*G*x)"},
        {{1, 3, 1}, "c^4*p^2*(w_xx + w_yy)/(16*pi*G)"},
        {{1, 1, 3}, "c^4*p^2*(-w_xxx*x - w_xyy*x + w_xx + w_yy)/(16*pi*G)"},
        {{1, 1, 4}, "-c^4*p^2*(w_xxy + w_yyy)*x/(16*pi*G)"},
    };
}

// cyclic sums of nabla-T: components (1,1,1), (1,1,3), (1,1,4)
inline ComponentMap prm_cyclic_nabla_t() {
    return {
        {{1, 1, 1}, "3*c^4*p^2*(-x^2*w_uyy - x^2*w_uxx + 2*p^2*r*w_xx + 2*p^2*r*w_yy)/(16*pi*G*x)"},
        {{1, 1, 3}, "c^4*p^2*(-w_xxx*x - w_xyy*x + 3*w_xx + 3*w_yy)/(16*pi*G)"},
        {{1, 1, 4}, "-c^4*p^2*(w_xxy + w_yyy)*x/(16*pi*G)"},
    };
}

// antisymmetrized nabla-T combinations
inline std::pair<std::string, std::string> prm_codazzi_differences() {
    return {"c^4*p^2*(w_xxx + w_xyy)*x/(16*pi*G)", "c^4*p^2*(w_xxy + w_yyy)*x/(16*pi*G)"};
}

// --------------------------------------------------------------- gprm tables

inline ComponentMap gprm_riemann() {
    return {
        {{1, 2, 1, 2}, "-(4*a*f - b^2)/(4*f*x^2)"},
        {{1, 2, 1, 3}, "r*(8*a*f + b^3)/(4*f*x^3)"},
        {{1, 3, 3, 4}, "-(b^2*f_y*r)/(4*f*x^2)"},
        {{1, 3, 1, 3},
         "-(a*b^2*f*r^2 + 2*a*b*f_x*r^2*x + 2*a*f_x*r^2*x + 12*a*f*r^2 - b^4*r^2 + b^2*f*w*x^3"
         " + 2*b*f*w_x*x^4 + 2*b*f*w*x^3 - f_x*w_x*x^5 + f_y*w_y*x^5 + 2*f*w_xx*x^5 - f_x*w*x^4"
         " + 4*f*w_x*x^4)/(4*f*x^4)"},
        {{1, 3, 1, 4},
         "-(2*a*b*f_y*r^2 + 2*a*f_y*r^2 + b*f*w_y*x^3 - f_y*w_x*x^4 - f_x*w_y*x^4 + 2*f*w_xy*x^4"
         " - f_y*w*x^3 + 2*f*w_y*x^3)/(4*f*x^3)"},
        {{1, 3, 2, 3}, "-(b*(b*f + f_x*x + 2*f))/(4*f*x^2)"},
        {{1, 3, 2, 4}, "-(b*f_y)/(4*f*x)"},
        {{1, 4, 2, 3}, "-(b*f_y)/(4*f*x)"},
        {{1, 4, 1, 4},
         "-(-2*a*b*f_x*r^2 - 2*a*f_x*r^2 + f_x*w_x*x^4 - f_y*w_y*x^4 + 2*f*w_yy*x^4"
         " + f_x*w*x^3)/(4*f*x^3)"},
        {{1, 4, 2, 4}, "(b*f_x)/(4*f*x)"},
        {{1, 4, 3, 4}, "(b^2*f_x*r)/(4*f*x^2)"},
        {{3, 4, 3, 4}, "-(-f_x^2 - f_y^2 + f*f_xx + f*f_yy)/(2*f)"},
    };
}

inline ComponentMap gprm_ricci() {
    return {
        {{1, 1},
         "(2*a^2*f*r^2 - 3*a*b^2*r^2 - 8*a*b*r^2 + 2*a*f*w*x^3 - 6*a*r^2 - b*(b*w + w_x*x + w)*x^3"
         " - (w_xx + w_yy)*x^5 - 2*w_x*x^4)/(-2*f*x^4)"},
        {{1, 2}, "-(2*a*f - b^2 - b)/(2*f*x^2)"},
        {{4, 4}, "-(b*f*f_x + f_x^2*x + f_y^2*x - f*f_xx*x - f*f_yy*x)/(2*f^2*x)"},
        {{3, 4}, "(b*f_y)/(2*f*x)"},
        {{1, 3}, "r*(4*a*f + b^3 + b^2)/(2*f*x^3)"},
        {{3, 3},
         "(b^2*f^2 + 2*b*f^2 + b*f_x*f*x + f_xx*f*x^2 + f_yy*f*x^2 - f_x^2*x^2"
         " - f_y^2*x^2)/(2*f^2*x^2)"},
    };
}

inline std::string gprm_kappa() {
    return "(-4*a*f^3 + b*(3*b + 4)*f^2 + 2*(f_xx + f_yy)*f*x^2 - 2*(f_x^2 + f_y^2)*x^2)"
           "/(2*f^3*x^2)";
}

inline ComponentMap gprm_stress_energy() {
    return {
        {{1, 1},
         "(c^4/(32*pi*f^3*G*x^4))*(3*a*b^2*f^2*r^2 + 12*a*b*f^2*r^2 + 12*a*f^2*r^2"
         " + 2*a*f_x^2*r^2*x^2 + 2*a*f_y^2*r^2*x^2 - 2*a*f*f_xx*r^2*x^2 - 2*a*f*f_yy*r^2*x^2"
         " - b^2*f^2*w*x^3 + 2*b*f^2*w_x*x^4 - 2*b*f^2*w*x^3 + 2*f^2*w_xx*x^5 + 2*f^2*w_yy*x^5"
         " + 4*f^2*w_x*x^4 + 2*f_x^2*w*x^5 + 2*f_y^2*w*x^5 - 2*f*f_xx*w*x^5 - 2*f*f_yy*w*x^5)"},
        {{1, 2},
         "-(c^4*(b^2*f^2 + 2*b*f^2 + 2*f_xx*f*x^2 + 2*f_yy*f*x^2 - 2*f_x^2*x^2"
         " - 2*f_y^2*x^2))/(32*pi*f^3*G*x^2)"},
        {{1, 3},
         "c^4*r*(4*a*b*f^3 + 8*a*f^3 - b^3*f^2 - 2*b^2*f^2 + 2*b*f_x^2*x^2 + 2*b*f_y^2*x^2"
         " - 2*b*f*f_xx*x^2 - 2*b*f*f_yy*x^2)/(32*pi*f^3*G*x^3)"},
        {{3, 3}, "c^4*(4*a*f^2 - b^2*f + 2*b*f_x*x)/(32*pi*f*G*x^2)"},
        {{3, 4}, "b*c^4*f_y/(16*pi*f*G*x)"},
        {{4, 4}, "c^4*(4*a*f^2 - 3*b^2*f - 2*b*f_x*x - 4*b*f)/(32*pi*f*G*x^2)"},
    };
}

// the degree-four relation: S^4 expressed through g, S, S^2, S^3
inline std::string gprm_s4_coeff_g() {
    return "((-2*a*f + b^2 + b)^2/(16*f^8*x^7)) * ("
           " b*(b + 2)*f^3*((f_xx + f_yy)*x - b*f_x)"
           " + f^2*x*((f_xx + f_yy)^2*x^2 - 2*b*(b + 1)*(f_x^2 + f_y^2))"
           " - 2*(f_x^2 + f_y^2)*(f_xx + f_yy)*f*x^3"
           " + (f_x^2 + f_y^2)^2*x^3 )";
}

inline std::string gprm_s4_coeff_s() {
    return "-((-2*a*f + b^2 + b)/(8*f^7*x^6)) * ("
           " f^4*(b^2*(b + 1)*(b + 2) - 4*a*(f_xx + f_yy)*x^2)"
           " + 2*f^3*x*( x*(2*a*f_y^2 + b*(2*b + 3)*(f_xx + f_yy)) + 2*a*f_x^2*x"
           "   - (b + 2)*b^2*f_x )"
           " - 2*a*b*(b + 2)*f^5"
           " + 2*f^2*x^2*((f_xx + f_yy)^2*x^2 - 3*b*(b + 1)*(f_x^2 + f_y^2))"
           " - 4*(f_x^2 + f_y^2)*(f_xx + f_yy)*f*x^4"
           " + 2*(f_x^2 + f_y^2)^2*x^4 )";
}

inline std::string gprm_s4_coeff_s2() {
    return "(1/(4*f^6*x^4)) * ("
           " 4*a^2*f^6"
           " + f^4*(b^2*(b + 1)*(3*b + 5) - 8*a*(f_xx + f_yy)*x^2)"
           " + f^3*x*( x*(8*a*f_y^2 + b*(5*b + 6)*(f_xx + f_yy)) + 8*a*f_x^2*x"
           "   - (b + 2)*b^2*f_x )"
           " - 4*a*b*(2*b + 3)*f^5"
           " + f^2*x^2*((f_xx + f_yy)^2*x^2 - 6*b*(b + 1)*(f_x^2 + f_y^2))"
           " - 2*(f_x^2 + f_y^2)*(f_xx + f_yy)*f*x^4"
           " + (f_x^2 + f_y^2)^2*x^4 )";
}

inline std::string gprm_s4_coeff_s3() {
    return "(1/(2*f^3*x^2)) * ( f^2*(4*a*f - b*(3*b + 4))"
           " + 2*(f_x^2 + f_y^2 - f*(f_xx + f_yy))*x^2 )";
}

// the quasi-Einstein scalar of the wider metric
inline std::string gprm_qe_alpha() { return "(b + b^2 - 2*a*f)/(2*f*x^2)"; }

// the pure-trace part of T over the covector frame
inline std::string gprm_t_alpha() {
    return "-(c^4*(b*(b + 2)*f^2 + 2*(f_xx + f_yy)*f*x^2 - 2*(f_x^2 + f_y^2)*x^2))"
           "/(32*pi*f^3*G*x^2)";
}

// ----------------------------------- reference witnesses (prm, as text)

inline std::vector<std::string> prm_ricci_1form_witness() {
    return {"1", "0", "(w_xxx + w_xyy)/(w_xx + w_yy)", "(w_xxy + w_yyy)/(w_xx + w_yy)"};
}

inline std::vector<std::string> prm_conformal_2form_witness() {
    std::string d = "(4*w_xy^2 + (w_yy - w_xx)^2)";
    return {"1", "0",
            "(2*w_xy*(w_xxy + w_yyy) - (w_yy - w_xx)*(w_xxx + w_xyy))/" + d,
            "(2*w_xy*(w_xxx + w_xyy) + (w_yy - w_xx)*(w_xxy + w_yyy))/" + d};
}

// weak Ricci symmetry witness (Pi, Omega, Theta); Pi1hat and Omega1hat are the
// free scalars
inline std::vector<std::string> prm_weak_ricci_witness() {
    return {
        // Pi
        "Pi1hat", "0", "(w_xxx*x + w_xyy*x - w_xx - w_yy)/((w_xx + w_yy)*x)",
        "(w_xxy + w_yyy)/(w_xx + w_yy)",
        // Omega
        "Omega1hat", "0", "-1/x", "0",
        // Theta
        "(x^2*w_uyy + x^2*w_uxx - 2*p^2*r*w_xx - 2*p^2*r*w_yy)/((w_xx + w_yy)*x^2)"
        " - Pi1hat - Omega1hat",
        "0", "-1/x", "0"};
}

inline std::vector<std::string> prm_weak_cyclic_ricci_witness() {
    std::string pi34a = "((w_xxx + w_xyy)*x - 3*w_xx - 3*w_yy)/((w_xx + w_yy)*x)";
    std::string pi34b = "(w_xxy + w_yyy)/(w_xx + w_yy)";
    return {
        "Pi1hat", "0", pi34a, pi34b,
        "Omega1hat", "0", pi34a, pi34b,
        "3*(x^2*(w_uyy + w_uxx) - 2*p^2*r*(w_xx + w_yy))/((w_xx + w_yy)*x^2)"
        " - Pi1hat - Omega1hat",
        "0", pi34a, pi34b};
}

// compatible-tensor families for R, C, P (free scalars named aNM)
inline std::vector<std::vector<std::string>> prm_compat_family_R() {
    return {
        {"a11", "a12", "a13", "a14"},
        {"a21", "0", "0", "0"},
        {"a31", "0", "a33", "a34"},
        {"a41", "0", "a43", "a33 + w_yy*a34/w_xy - w_xx*a43/w_xy"},
    };
}

inline std::vector<std::vector<std::string>> prm_compat_family_C() {
    return {
        {"a11", "a12", "a13", "a14"},
        {"a21", "0", "0", "0"},
        {"a31", "0", "a33", "a34"},
        {"a41", "0", "-2*w_xy*a33/(w_yy - w_xx) - a34 + 2*w_xy*a44/(w_yy - w_xx)", "a44"},
    };
}

inline std::vector<std::vector<std::string>> prm_compat_family_P() {
    return {
        {"a11", "a12", "a13", "a14"},
        {"a21", "0", "0", "0"},
        {"a31", "0", "-(2*w_yy - w_xx)*a34/(3*w_xy) - (w_yy - 2*w_xx)*a43/(3*w_xy) + a44", "a34"},
        {"a41", "0", "a43", "a44"},
    };
}

// the worked perfect-fluid instance: energy-momentum in closed form
inline std::string perfect_fluid_instance_pressure() {
    return "-(c^4*exp(-(1/3)*x^3)*(3*x^3 + 1))/(24*pi*G*x^(4/3))";
}
inline std::string perfect_fluid_instance_e4_coeff() { return "(c^4*(3*x^3 - 2))/(12*pi*G*x^2)"; }

} // namespace fixtures
