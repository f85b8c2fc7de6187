#pragma once

#include <optional>
#include <vector>

#include "charmut/mutation.hpp"
#include "charmut/poly.hpp"
#include "charmut/rep.hpp"

namespace charmut::fig8 {

/// < t, a | t^-1 a^-1 t^-1 a t a^-2 t a >.
const Presentation& knot_group();
/// < t, a | t^-1 a t a^2 t a t^-1 a >.
const Presentation& sister_group();
/// < t, a, b | t^-1 a t = a b a, t^-1 b t = b a >, the fibred form.
const Presentation& fibred_group();
/// The fibred form split over the fibre < a, b > with stable letter t.
const HnnSplitting& fibre_split();

/// Fibre generator b as a word in t, a: a^-1 t^-1 a t a^-1.
const Word& fibre_b_word();
/// b in the sister group's generators: a^-2 t^-1 a^-1 t.
const Word& sister_b_word();

/// Knot group rep -> fibred form, via b = a^-1 t^-1 a t a^-1.
Representation to_fibred(const Representation& rep);
/// Mutant of the fibred form -> sister group: t -> rho(t), a -> rho(a)^-1.
Representation mutant_to_sister(const Representation& mutant);
/// Sister group rep -> the mutant fibred presentation (inverse of the above).
Representation sister_to_mutant(const Representation& sister);

/// The four primitive fifth roots of unity.
std::vector<cplx> primitive_fifth_roots();
/// rho(t) = [[i, 1], [0, -i]], rho(a) = [[u, 0], [i(u^-1 - u), u^-1]].
Representation dihedral_rep(cplx u);
/// H(z) = [[iz, z], [z - z^-1, -iz]].
Mat2C h_matrix(cplx z);
/// Sister group rep with t -> H(z) rho(t), a -> rho(a).
Representation rho_z(cplx u, cplx z);

/// Random irreducible rep of `group` (a two-generator one-relator group in
/// t, a): fix a random y = tr a, put rho(t) = diag(l, 1/l),
/// rho(a) = [[al, 1], [al (y - al) - 1, y - al]] and polish (l, al) by
/// Gauss-Newton on the relator.  Returns nullopt if all restarts fail or the
/// result is reducible.
std::optional<Representation> sample_irreducible(const Presentation& group, Rng& rng, int restarts = 8);

/// (x, y) = (tr t, tr a).
std::pair<cplx, cplx> xy(const Representation& rep);

/// Defining polynomials in x, y (SL2) and X, y (PSL2).
MultiPoly knot_curve();            // 1 - y - y^2 + (-1 + y) x^2
MultiPoly sister_curve();          // 1 + (-1 + y) x^2
MultiPoly knot_variety();          // (2 - y)(knot_curve)
MultiPoly sister_variety();        // (2 - y)(1 - y - y^2)(sister_curve)

}  // namespace charmut::fig8
