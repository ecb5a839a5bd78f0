#pragma once

namespace soliton {

/// Cubic Hermite interpolant through (x0, y0, d0) and (x1, y1, d1), evaluated at x.
inline double hermite(double x0, double x1, double y0, double y1, double d0, double d1, double x) {
    const double h = x1 - x0;
    const double t = (x - x0) / h;
    const double t2 = t * t;
    const double t3 = t2 * t;
    const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
    const double h10 = t3 - 2.0 * t2 + t;
    const double h01 = -2.0 * t3 + 3.0 * t2;
    const double h11 = t3 - t2;
    return h00 * y0 + h10 * h * d0 + h01 * y1 + h11 * h * d1;
}

/// Derivative of the same interpolant with respect to x.
inline double hermite_derivative(double x0, double x1, double y0, double y1, double d0, double d1,
                                 double x) {
    const double h = x1 - x0;
    const double t = (x - x0) / h;
    const double t2 = t * t;
    const double dh00 = 6.0 * t2 - 6.0 * t;
    const double dh10 = 3.0 * t2 - 4.0 * t + 1.0;
    const double dh01 = -6.0 * t2 + 6.0 * t;
    const double dh11 = 3.0 * t2 - 2.0 * t;
    return (dh00 * y0 + dh01 * y1) / h + dh10 * d0 + dh11 * d1;
}

}  // namespace soliton
