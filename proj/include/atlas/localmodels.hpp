#pragma once

#include <vector>

#include "atlas/errors.hpp"
#include "atlas/laurent.hpp"
#include "atlas/laurent_linalg.hpp"
#include "atlas/matrix.hpp"

namespace atlas {

enum class FormKind { Symplectic, Symmetric };

// A Higgs germ on a disc: a matrix of Laurent series together with the
// bilinear pairing it is skew-adjoint for. The twist line is trivialized,
// so the Higgs field is just a matrix over the series ring.
struct LocalHiggsGerm {
  Mat<LaurentSeries> higgs;
  Mat<LaurentSeries> form;
  FormKind kind = FormKind::Symplectic;
};

// Checks the shape of the pairing ((anti)symmetry per kind) and that the
// Higgs germ is skew-adjoint for it, to the available truncation. Throws
// ValidationError.
void check_pairing(const LocalHiggsGerm& e);

// [[0, z^l], [z^{m-l}, 0]] with the standard symplectic pairing. The label
// range is 0 <= 2l <= m; characteristic polynomial lambda^2 - z^m.
LocalHiggsGerm sl2_normal_form(int m, int l);

// Rank 2n: the sl(2) block above plus n-1 hyperbolic pairs diag(u, -u) for
// eigenvalue branches u that are pairwise distinct units at the origin.
LocalHiggsGerm sp_normal_form(int n, int m, int l,
                              const std::vector<LaurentSeries>& eigen);

// Rank-3 orthogonal normal form with labels 0 <= 2l <= m: the image of the
// sl(2) normal form under the adjoint representation, written in a frame
// where the pairing is the identity. Characteristic polynomial
// lambda (lambda^2 - 4 z^m).
LocalHiggsGerm so3_normal_form(int m, int l);

// Adjoint image of a trace-free rank-2 germ [[d, a], [b, -d]] in the same
// orthonormal frame. Applied to sl2_normal_form(m, l) this reproduces
// so3_normal_form(m, l) on the nose.
LocalHiggsGerm so3_from_sl2_adjoint(const LocalHiggsGerm& e);

struct PushforwardResult {
  // Rank 2k over the base coordinate z = w^k, with the pinned constant
  // antidiagonal pairing.
  LocalHiggsGerm germ;
  // w-grading of each frame vector w^j s_a; the frame is ordered
  // (s_1, s_2, w s_1, w s_2, ...), so this reads 0,0,1,1,...,k-1,k-1.
  std::vector<long> transition_exponents;
  // k-1 when the frame absorbs the half branch twist, else 0.
  long frame_twist_exponent = 0;
  long cover_degree = 1;
};

// Pushforward of a rank-2 germ along w -> z = w^k. The input pairing must
// be the standard symplectic one. Beyond k in {1, 2, 4} every entry must be
// single-phase (all exponents in one residue class mod k); wider inputs
// would need roots of unity the scalar ring does not carry.
PushforwardResult pushforward_germ(const LocalHiggsGerm& e, long k,
                                   bool twist_half_branch = false);

// Inverse direction: pull a rank-2n germ over z back along z = w^k and
// restrict to the rank-2 eigenspace where phi^2 = -b2. The restricted
// pairing is normalized by (k w^{k-1})^{-1}, which makes the pushforward
// roundtrip land back on the standard pairing.
LocalHiggsGerm pullback_eigengerm(const LocalHiggsGerm& e, const LaurentSeries& b2,
                                  long k);

struct SoKernelData {
  // Normalized generator of the kernel line of the rank-3 germ (the primitive
  // section after dividing out vanishing_order).
  Mat<LaurentSeries> kernel_section;
  long vanishing_order = 0;
  // The pairing evaluated on the normalized kernel section.
  LaurentSeries form_on_kernel;
  // Rank-2 restriction to the orthogonal complement of the kernel line.
  LocalHiggsGerm complement;
};

// Kernel-line data of a rank-3 orthogonal germ. The pairing must be
// unimodular. For so3_normal_form(m, l) the vanishing order is l and the
// form on the kernel is -4 z^{m-2l}.
SoKernelData so_kernel_data(const LocalHiggsGerm& e);

struct SoHeckeResult {
  // Rank-3 germ with holomorphic Higgs field and unimodular pairing.
  LocalHiggsGerm germ;
  // Length of the modification: the valuation drop of det(form) is twice
  // this.
  long torsion_length = 0;
};

// Rebuilds the unimodular-pairing germ on the other end of the symmetric
// Hecke modification from the kernel data of a germ with labels (m, l).
// Needs the leading coefficient ratio of the two degenerate directions to
// be a square in Q(i); otherwise no symmetric modification exists over the
// coefficient field and this throws PreconditionError.
SoHeckeResult so_hecke_reconstruct(const SoKernelData& kd, int m, int l);

// Compares the computable frame invariants of two germs: rank, pairing
// kind, characteristic coefficients to the common truncation, the valuation
// of det(form), and (symmetric kind) the square class of its leading
// coefficient ratio.
bool frame_equivalent(const LocalHiggsGerm& a, const LocalHiggsGerm& b);

// det(lambda - higgs), lowest degree first, length rank + 1.
std::vector<LaurentSeries> char_poly_of(const LocalHiggsGerm& e);

// Sheet product prod_j det(lambda - phi(xi^j w)) over the fibre of
// z = w^k, expressed in z: the independent oracle for the pushforward
// characteristic polynomial. Needs k in {1, 2, 4} (roots of unity inside
// Q(i)) or a trace-free single-phase rank-2 germ.
std::vector<LaurentSeries> norm_char_poly(const LocalHiggsGerm& e, long k);

}  // namespace atlas
