// Builds a biorthonormal eigenbasis for a 2x2 non-normal matrix, expands a
// vector in it, then shows the same construction failing at an exceptional point.

#include "biortho/biorthonormal.hpp"
#include "biortho/gallery.hpp"

#include <iostream>

int main() {
    using namespace biortho;

    ComplexMatrix a(2, 2);
    a << 1.0, 1.0, 0.0, 2.0;
    const PointSpectrum ps = point_spectrum(a);
    const BiorthonormalSystem sys = biorthonormalize(a, ps);

    ComplexVector f(2);
    f << 1.0, 1.0;
    const auto coeffs = expand(sys, f);
    std::cout << "A = [[1, 1], [0, 2]], f = (1, 1)\n";
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        std::cout << "  A_" << i + 1 << " = (chi_" << i + 1 << ", f) = " << coeffs[i] << "\n";
    }
    std::cout << "  ||sum psi_i chi_i^H - I||_F = "
              << (resolution_of_identity(sys) - ComplexMatrix::Identity(2, 2)).norm() << "\n\n";

    for (double t : {1.0, 0.1, 0.01, 0.0}) {
        const ComplexMatrix h = generate({"ep_family", 2, {{"t", t}}, {}, 0});
        try {
            const BiorthonormalSystem s = biorthonormalize(h, point_spectrum(h));
            std::cout << "ep_family t = " << t << ": basis exists, gram residual " << s.gram_residual << "\n";
        } catch (const SkewLinkFailure& e) {
            std::cout << "ep_family t = " << t << ": " << e.what() << "\n";
        }
    }
}
