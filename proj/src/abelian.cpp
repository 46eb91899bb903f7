#include "hgk/abelian.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <utility>

#include "hgk/error.hpp"

namespace hgk {

// ---- groups ----

FGAbelianGroup::FGAbelianGroup(int rank, Vector torsion) : rank_(rank), torsion_(std::move(torsion)) {
  if (rank_ < 0) throw InvalidArgument("abelian group: negative rank");
  for (std::size_t i = 0; i < torsion_.size(); ++i) {
    if (torsion_[i] < 2) throw InvalidArgument("abelian group: invariant factors must be at least 2");
    if (i > 0 && torsion_[i] % torsion_[i - 1] != 0)
      throw InvalidArgument("abelian group: invariant factors must divide each other");
  }
}

FGAbelianGroup FGAbelianGroup::cyclic(Int n) {
  if (n < 0) throw InvalidArgument("cyclic group of negative order");
  if (n == 0) return free(1);
  if (n == 1) return {};
  return FGAbelianGroup(0, {n});
}

Int FGAbelianGroup::modulus(std::size_t i) const {
  const auto r = static_cast<std::size_t>(rank_);
  return i < r ? 0 : torsion_.at(i - r);
}

Vector FGAbelianGroup::moduli() const {
  Vector m(static_cast<std::size_t>(rank_), 0);
  m.insert(m.end(), torsion_.begin(), torsion_.end());
  return m;
}

std::optional<std::uint64_t> FGAbelianGroup::cardinality() const {
  if (rank_ > 0) return std::nullopt;
  Int c = 1;
  for (Int d : torsion_) c = checked_mul(c, d);
  return static_cast<std::uint64_t>(c);
}

Vector FGAbelianGroup::reduce(Vector x) const {
  if (x.size() != generators()) throw InvalidArgument("element has the wrong number of coordinates");
  for (std::size_t i = static_cast<std::size_t>(rank_); i < x.size(); ++i) x[i] = reduce_mod(x[i], modulus(i));
  return x;
}

bool FGAbelianGroup::contains(const Vector& x) const {
  if (x.size() != generators()) return false;
  for (std::size_t i = static_cast<std::size_t>(rank_); i < x.size(); ++i)
    if (x[i] < 0 || x[i] >= modulus(i)) return false;
  return true;
}

std::string FGAbelianGroup::to_string() const {
  if (is_zero()) return "0";
  std::vector<std::string> parts;
  if (rank_ == 1) parts.push_back("Z");
  if (rank_ > 1) parts.push_back("Z^" + std::to_string(rank_));
  for (Int d : torsion_) parts.push_back("Z/" + std::to_string(d));
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? " + " : "") + parts[i];
  return out;
}

namespace {

Matrix relations(const FGAbelianGroup& g) {
  std::vector<Vector> cols;
  for (std::size_t i = static_cast<std::size_t>(g.rank()); i < g.generators(); ++i) {
    Vector c(g.generators(), 0);
    c[i] = g.modulus(i);
    cols.push_back(std::move(c));
  }
  return Matrix::from_columns(g.generators(), cols);
}

Matrix reduce_rows(Matrix m, const FGAbelianGroup& target) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = reduce_mod(m(i, j), target.modulus(i));
  return m;
}

}  // namespace

// ---- homomorphisms ----

AbHom::AbHom(FGAbelianGroup source, FGAbelianGroup target, Matrix matrix)
    : source_(std::move(source)), target_(std::move(target)) {
  if (matrix.rows() != target_.generators() || matrix.cols() != source_.generators())
    throw InvariantViolation("homomorphism matrix is " + std::to_string(matrix.rows()) + "x" +
                             std::to_string(matrix.cols()) + ", expected " +
                             std::to_string(target_.generators()) + "x" + std::to_string(source_.generators()));
  matrix_ = reduce_rows(std::move(matrix), target_);
  for (std::size_t j = static_cast<std::size_t>(source_.rank()); j < source_.generators(); ++j) {
    const Int d = source_.modulus(j);
    for (std::size_t i = 0; i < target_.generators(); ++i)
      if (reduce_mod(checked_mul(d, matrix_(i, j)), target_.modulus(i)) != 0)
        throw InvariantViolation("homomorphism not well defined: generator " + std::to_string(j) + " of order " +
                                 std::to_string(d) + " maps to an element of different order");
  }
}

AbHom AbHom::zero(const FGAbelianGroup& source, const FGAbelianGroup& target) {
  return AbHom(source, target, Matrix(target.generators(), source.generators()));
}

AbHom AbHom::identity(const FGAbelianGroup& g) { return AbHom(g, g, Matrix::identity(g.generators())); }

Vector AbHom::apply(const Vector& x) const { return target_.reduce(matrix_ * source_.reduce(x)); }

AbHom compose(const AbHom& g, const AbHom& f) {
  if (!(g.source() == f.target())) throw InvalidArgument("compose: homomorphisms are not composable");
  return AbHom(f.source(), g.target(), g.matrix() * f.matrix());
}

AbHom operator+(const AbHom& a, const AbHom& b) {
  if (!(a.source() == b.source()) || !(a.target() == b.target()))
    throw InvalidArgument("sum of homomorphisms with different source or target");
  return AbHom(a.source(), a.target(), a.matrix() + b.matrix());
}

AbHom negate(const AbHom& a) { return AbHom(a.source(), a.target(), scale(a.matrix(), -1)); }

// ---- subquotients ----

namespace {

Vector basis_coordinates(const Subquotient& q, const Vector& x) {
  if (x.size() != q.ambient) throw InvalidArgument("subquotient: vector has the wrong length");
  const Vector y = q.basis_U * x;
  const std::size_t k = q.basis_diagonal.size();
  Vector c(k, 0);
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (i < k) {
      if (y[i] % q.basis_diagonal[i] != 0) throw InvalidArgument("subquotient: vector outside the lattice");
      c[i] = y[i] / q.basis_diagonal[i];
    } else if (y[i] != 0) {
      throw InvalidArgument("subquotient: vector outside the lattice");
    }
  }
  return q.basis_V * c;
}

}  // namespace

Vector Subquotient::coordinates(const Vector& x) const {
  const Vector z = transform * basis_coordinates(*this, x);
  Vector out(kept.size());
  for (std::size_t p = 0; p < kept.size(); ++p) out[p] = reduce_mod(z[kept[p]], kept_moduli[p]);
  return out;
}

Subquotient subquotient(std::size_t ambient, const Matrix& big, const Matrix& small) {
  if (big.rows() != ambient || small.rows() != ambient) throw InvalidArgument("subquotient: ambient mismatch");
  Subquotient q;
  q.ambient = ambient;
  const Matrix B = image_basis(big);
  const std::size_t k = B.cols();
  const auto sB = smith_normal_form(B);
  q.basis_U = sB.U;
  q.basis_V = sB.V;
  q.basis_diagonal = sB.diagonal;

  std::vector<Vector> cols;
  for (std::size_t j = 0; j < small.cols(); ++j) {
    try {
      cols.push_back(basis_coordinates(q, small.column(j)));
    } catch (const InvalidArgument&) {
      throw InvariantViolation("subquotient: relation lattice is not contained in the generating lattice");
    }
  }
  const auto sQ = smith_normal_form(Matrix::from_columns(k, cols));
  q.transform = sQ.U;

  Vector torsion;
  std::vector<std::size_t> tors_idx;
  for (std::size_t i = 0; i < sQ.rank; ++i)
    if (sQ.diagonal[i] > 1) {
      tors_idx.push_back(i);
      torsion.push_back(sQ.diagonal[i]);
    }
  for (std::size_t i = sQ.rank; i < k; ++i) {
    q.kept.push_back(i);
    q.kept_moduli.push_back(0);
  }
  for (std::size_t p = 0; p < tors_idx.size(); ++p) {
    q.kept.push_back(tors_idx[p]);
    q.kept_moduli.push_back(torsion[p]);
  }
  q.group = FGAbelianGroup(static_cast<int>(k - sQ.rank), torsion);

  const Matrix R = B * sQ.U_inverse;
  q.representatives = Matrix(ambient, q.kept.size());
  for (std::size_t p = 0; p < q.kept.size(); ++p)
    for (std::size_t i = 0; i < ambient; ++i) q.representatives(i, p) = R(i, q.kept[p]);
  return q;
}

Subquotient canonical_presentation(const Vector& moduli) {
  std::vector<Vector> rel;
  for (std::size_t i = 0; i < moduli.size(); ++i)
    if (moduli[i] != 0) {
      Vector c(moduli.size(), 0);
      c[i] = moduli[i];
      rel.push_back(std::move(c));
    }
  return subquotient(moduli.size(), Matrix::identity(moduli.size()), Matrix::from_columns(moduli.size(), rel));
}

FGAbelianGroup direct_sum(const std::vector<FGAbelianGroup>& groups) {
  Vector moduli;
  for (const auto& g : groups) {
    const auto m = g.moduli();
    moduli.insert(moduli.end(), m.begin(), m.end());
  }
  return canonical_presentation(moduli).group;
}

FGAbelianGroup kernel(const AbHom& f) {
  const Matrix K = kernel_basis_mod(f.matrix(), f.target().moduli());
  return subquotient(f.source().generators(), K, relations(f.source())).group;
}

FGAbelianGroup cokernel(const AbHom& f) {
  const auto& t = f.target();
  return subquotient(t.generators(), Matrix::identity(t.generators()), f.matrix().hconcat(relations(t))).group;
}

FGAbelianGroup image(const AbHom& f) {
  const auto& t = f.target();
  return subquotient(t.generators(), f.matrix().hconcat(relations(t)), relations(t)).group;
}

bool is_isomorphism(const AbHom& f) { return kernel(f).is_zero() && cokernel(f).is_zero(); }

// ---- chain complexes ----

void ChainComplex::validate() const {
  const bool chain = orientation == Orientation::chain;
  const std::size_t expected = groups.empty() ? 0 : groups.size() - 1;
  if (differentials.size() != expected)
    throw InvariantViolation("complex has " + std::to_string(differentials.size()) + " differentials, expected " +
                             std::to_string(expected));
  for (std::size_t i = 0; i < differentials.size(); ++i) {
    const auto& d = differentials[i];
    const auto& src = chain ? groups[i + 1] : groups[i];
    const auto& tgt = chain ? groups[i] : groups[i + 1];
    if (!(d.source() == src) || !(d.target() == tgt))
      throw InvariantViolation("differential " + std::to_string(i) + " has the wrong source or target");
  }
  for (std::size_t i = 0; i + 1 < differentials.size(); ++i) {
    const AbHom dd = chain ? compose(differentials[i], differentials[i + 1])
                           : compose(differentials[i + 1], differentials[i]);
    if (!dd.is_zero()) {
      const std::size_t deg = chain ? i + 2 : i;
      throw InvariantViolation("d.d is nonzero on degree " + std::to_string(deg));
    }
  }
}

ChainComplex shifted(const FGAbelianGroup& A, int n) {
  if (n < 0) throw InvalidArgument("negative degree");
  ChainComplex C;
  C.groups.assign(static_cast<std::size_t>(n) + 1, FGAbelianGroup{});
  C.groups.back() = A;
  for (int i = 0; i < n; ++i)
    C.differentials.push_back(AbHom::zero(C.groups[static_cast<std::size_t>(i) + 1], C.groups[static_cast<std::size_t>(i)]));
  return C;
}

std::vector<FGAbelianGroup> homology(const ChainComplex& C) {
  C.validate();
  const bool chain = C.orientation == Orientation::chain;
  std::vector<FGAbelianGroup> out;
  const int top = C.top_degree();
  for (int n = 0; n <= top; ++n) {
    const auto un = static_cast<std::size_t>(n);
    const AbHom* outgoing = nullptr;
    const AbHom* incoming = nullptr;
    if (chain) {
      if (n >= 1) outgoing = &C.differentials[un - 1];
      if (n < top) incoming = &C.differentials[un];
    } else {
      if (n < top) outgoing = &C.differentials[un];
      if (n >= 1) incoming = &C.differentials[un - 1];
    }
    const auto& g = C.groups[un];
    const Matrix K = outgoing ? kernel_basis_mod(outgoing->matrix(), outgoing->target().moduli())
                              : Matrix::identity(g.generators());
    Matrix small = relations(g);
    if (incoming) small = small.hconcat(incoming->matrix());
    out.push_back(subquotient(g.generators(), K, small).group);
  }
  return out;
}

// ---- simplicial abelian groups ----

SimplicialAbelianGroup::SimplicialAbelianGroup(std::vector<FGAbelianGroup> levels,
                                               std::vector<std::vector<AbHom>> faces,
                                               std::vector<std::vector<AbHom>> degeneracies)
    : SimplicialAbelianGroup(std::move(levels), std::move(faces), std::move(degeneracies), true) {}

SimplicialAbelianGroup SimplicialAbelianGroup::unchecked(std::vector<FGAbelianGroup> levels,
                                                         std::vector<std::vector<AbHom>> faces,
                                                         std::vector<std::vector<AbHom>> degeneracies) {
  return SimplicialAbelianGroup(std::move(levels), std::move(faces), std::move(degeneracies), false);
}

SimplicialAbelianGroup::SimplicialAbelianGroup(std::vector<FGAbelianGroup> levels,
                                               std::vector<std::vector<AbHom>> faces,
                                               std::vector<std::vector<AbHom>> degeneracies, bool check)
    : levels_(std::move(levels)), faces_(std::move(faces)), degeneracies_(std::move(degeneracies)) {
  if (levels_.empty()) throw InvalidArgument("simplicial abelian group needs level 0");
  const std::size_t N = levels_.size() - 1;
  if (faces_.size() != N + 1 || degeneracies_.size() != N + 1)
    throw InvalidArgument("simplicial abelian group: operator tables have the wrong number of levels");
  for (std::size_t n = 0; n <= N; ++n) {
    const std::size_t nf = n == 0 ? 0 : n + 1;
    const std::size_t nd = n == N ? 0 : n + 1;
    if (faces_[n].size() != nf || degeneracies_[n].size() != nd)
      throw InvalidArgument("simplicial abelian group: wrong number of operators at level " + std::to_string(n));
    for (const auto& f : faces_[n])
      if (!(f.source() == levels_[n]) || !(f.target() == levels_[n - 1]))
        throw InvalidArgument("face at level " + std::to_string(n) + " has the wrong source or target");
    for (const auto& s : degeneracies_[n])
      if (!(s.source() == levels_[n]) || !(s.target() == levels_[n + 1]))
        throw InvalidArgument("degeneracy at level " + std::to_string(n) + " has the wrong source or target");
  }
  if (check)
    if (auto v = identity_violation()) throw InvariantViolation(*v);
}

AbHom SimplicialAbelianGroup::act(const MonotoneMap& theta) const {
  const int N = truncation();
  if (theta.codomain() > N || theta.domain() > N)
    throw TruncationTooSmall(N, std::max(theta.codomain(), theta.domain()));
  const auto [epi, mono] = epi_mono_factor(theta);
  int level = mono.codomain();
  AbHom cur = AbHom::identity(this->level(level));
  const auto om = mono.omitted();
  for (auto it = om.rbegin(); it != om.rend(); ++it) {
    cur = compose(face(level, *it), cur);
    --level;
  }
  for (int t : epi.repeats()) {
    cur = compose(degeneracy(level, t), cur);
    ++level;
  }
  return cur;
}

std::optional<std::string> SimplicialAbelianGroup::identity_violation() const {
  const int N = truncation();
  auto msg = [](int level, const std::string& what) {
    return "simplicial identity " + what + " fails at level " + std::to_string(level);
  };
  for (int n = 2; n <= N; ++n)
    for (int j = 1; j <= n; ++j)
      for (int i = 0; i < j; ++i)
        if (!(compose(face(n - 1, i), face(n, j)) == compose(face(n - 1, j - 1), face(n, i))))
          return msg(n, "d" + std::to_string(i) + " d" + std::to_string(j));
  for (int n = 0; n < N; ++n)
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i <= n + 1; ++i) {
        const AbHom lhs = compose(face(n + 1, i), degeneracy(n, j));
        AbHom rhs;
        if (i < j)
          rhs = compose(degeneracy(n - 1, j - 1), face(n, i));
        else if (i == j || i == j + 1)
          rhs = AbHom::identity(level(n));
        else
          rhs = compose(degeneracy(n - 1, j), face(n, i - 1));
        if (!(lhs == rhs)) return msg(n, "d" + std::to_string(i) + " s" + std::to_string(j));
      }
  for (int n = 0; n + 2 <= N; ++n)
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i <= j; ++i)
        if (!(compose(degeneracy(n + 1, i), degeneracy(n, j)) == compose(degeneracy(n + 1, j + 1), degeneracy(n, i))))
          return msg(n, "s" + std::to_string(i) + " s" + std::to_string(j));
  return std::nullopt;
}

SimplicialAbelianGroup constant_group(const FGAbelianGroup& A, int N) {
  if (N < 0) throw InvalidArgument("negative truncation");
  const auto n = static_cast<std::size_t>(N);
  std::vector<FGAbelianGroup> levels(n + 1, A);
  std::vector<std::vector<AbHom>> faces(n + 1), degens(n + 1);
  for (std::size_t l = 0; l <= n; ++l) {
    if (l > 0) faces[l].assign(l + 1, AbHom::identity(A));
    if (l < n) degens[l].assign(l + 1, AbHom::identity(A));
  }
  return SimplicialAbelianGroup(levels, faces, degens);
}

SimplicialAbelianGroup free_abelian(const SimplicialSet& X, Int modulus) {
  if (modulus < 0) throw InvalidArgument("negative modulus");
  const int N = X.truncation();
  auto group = [&](std::size_t size) {
    if (modulus == 0) return FGAbelianGroup::free(static_cast<int>(size));
    if (modulus == 1) return FGAbelianGroup{};
    return FGAbelianGroup(0, Vector(size, modulus));
  };
  std::vector<FGAbelianGroup> levels;
  for (int l = 0; l <= N; ++l) levels.push_back(group(X.size(l)));
  auto induced = [&](int from, int to, const std::vector<Index>& map) {
    if (modulus == 1) return AbHom::zero(levels[static_cast<std::size_t>(from)], levels[static_cast<std::size_t>(to)]);
    Matrix m(X.size(to), X.size(from));
    for (Index x = 0; x < map.size(); ++x) m(map[x], x) = 1;
    return AbHom(levels[static_cast<std::size_t>(from)], levels[static_cast<std::size_t>(to)], m);
  };
  std::vector<std::vector<AbHom>> faces(static_cast<std::size_t>(N) + 1), degens(static_cast<std::size_t>(N) + 1);
  for (int l = 0; l <= N; ++l) {
    if (l > 0)
      for (int j = 0; j <= l; ++j) faces[static_cast<std::size_t>(l)].push_back(induced(l, l - 1, X.face_map(l, j)));
    if (l < N)
      for (int j = 0; j <= l; ++j)
        degens[static_cast<std::size_t>(l)].push_back(induced(l, l + 1, X.degeneracy_map(l, j)));
  }
  return SimplicialAbelianGroup(levels, faces, degens);
}

namespace {

// An operator given on concatenated presentations, transported to the
// canonical groups of source and target.
AbHom transport(const Subquotient& from, const Subquotient& to, const Matrix& presented) {
  const Matrix cols = presented * from.representatives;
  std::vector<Vector> out;
  for (std::size_t j = 0; j < cols.cols(); ++j) out.push_back(to.coordinates(cols.column(j)));
  return AbHom(from.group, to.group, Matrix::from_columns(to.group.generators(), out));
}

Matrix block_diagonal(const Matrix& a, const Matrix& b) {
  Matrix m(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
  return m;
}

Vector concat(Vector a, const Vector& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace

SimplicialAbelianGroup direct_sum(const SimplicialAbelianGroup& A, const SimplicialAbelianGroup& B) {
  if (A.truncation() != B.truncation()) throw InvalidArgument("direct sum: truncations differ");
  const int N = A.truncation();
  std::vector<Subquotient> pres;
  std::vector<FGAbelianGroup> levels;
  for (int l = 0; l <= N; ++l) {
    pres.push_back(canonical_presentation(concat(A.level(l).moduli(), B.level(l).moduli())));
    levels.push_back(pres.back().group);
  }
  std::vector<std::vector<AbHom>> faces(static_cast<std::size_t>(N) + 1), degens(static_cast<std::size_t>(N) + 1);
  for (int l = 0; l <= N; ++l) {
    const auto ul = static_cast<std::size_t>(l);
    if (l > 0)
      for (int j = 0; j <= l; ++j)
        faces[ul].push_back(transport(pres[ul], pres[ul - 1], block_diagonal(A.face(l, j).matrix(), B.face(l, j).matrix())));
    if (l < N)
      for (int j = 0; j <= l; ++j)
        degens[ul].push_back(
            transport(pres[ul], pres[ul + 1], block_diagonal(A.degeneracy(l, j).matrix(), B.degeneracy(l, j).matrix())));
  }
  return SimplicialAbelianGroup(levels, faces, degens);
}

ChainComplex unnormalized_complex(const SimplicialAbelianGroup& A) {
  ChainComplex C;
  for (int n = 0; n <= A.truncation(); ++n) C.groups.push_back(A.level(n));
  for (int n = 1; n <= A.truncation(); ++n) {
    AbHom d = AbHom::zero(A.level(n), A.level(n - 1));
    for (int i = 0; i <= n; ++i) d = d + (i % 2 == 0 ? A.face(n, i) : negate(A.face(n, i)));
    C.differentials.push_back(d);
  }
  C.validate();
  return C;
}

Normalization normalize(const SimplicialAbelianGroup& A) {
  Normalization out;
  const int N = A.truncation();
  for (int n = 0; n <= N; ++n) {
    const auto& g = A.level(n);
    Matrix K = Matrix::identity(g.generators());
    if (n >= 1) {
      Matrix stacked(0, g.generators());
      Vector moduli;
      for (int i = 1; i <= n; ++i) {
        stacked = stacked.vconcat(A.face(n, i).matrix());
        moduli = concat(moduli, A.level(n - 1).moduli());
      }
      K = kernel_basis_mod(stacked, moduli);
    }
    out.presentations.push_back(subquotient(g.generators(), K, relations(g)));
    out.complex.groups.push_back(out.presentations.back().group);
    out.inclusions.emplace_back(out.presentations.back().group, g, out.presentations.back().representatives);
  }
  for (int n = 1; n <= N; ++n) {
    const auto& here = out.presentations[static_cast<std::size_t>(n)];
    const auto& below = out.presentations[static_cast<std::size_t>(n) - 1];
    const Matrix images = A.face(n, 0).matrix() * here.representatives;
    std::vector<Vector> cols;
    for (std::size_t j = 0; j < images.cols(); ++j) cols.push_back(below.coordinates(images.column(j)));
    out.complex.differentials.emplace_back(here.group, below.group,
                                           Matrix::from_columns(below.group.generators(), cols));
  }
  out.complex.validate();
  return out;
}

ChainComplex normalized_complex(const SimplicialAbelianGroup& A) { return normalize(A).complex; }

// ---- denormalization ----

namespace {

struct Summand {
  MonotoneMap epi;  // [n] -> [k]
  int k;
  std::size_t offset;
};

struct Denormalized {
  std::vector<std::vector<Summand>> summands;
  std::vector<std::map<MonotoneMap, std::size_t>> lookup;
  std::vector<std::size_t> presented_size;
  std::vector<Subquotient> canon;
  SimplicialAbelianGroup result;
};

Denormalized denormalize_detail(const ChainComplex& C, int N) {
  if (C.orientation != Orientation::chain) throw InvalidArgument("denormalize needs a chain complex");
  if (N < 0) throw InvalidArgument("negative truncation");
  C.validate();
  const int top = C.top_degree();
  const auto uN = static_cast<std::size_t>(N);
  std::vector<std::vector<Summand>> summands(uN + 1);
  std::vector<std::map<MonotoneMap, std::size_t>> lookup(uN + 1);
  std::vector<std::size_t> sizes(uN + 1, 0);
  std::vector<Subquotient> canon;
  for (int n = 0; n <= N; ++n) {
    const auto un = static_cast<std::size_t>(n);
    Vector moduli;
    for (int k = 0; k <= std::min(n, top); ++k)
      for (const auto& s : all_surjections(n, k)) {
        lookup[un].emplace(s, summands[un].size());
        summands[un].push_back({s, k, sizes[un]});
        const auto& g = C.groups[static_cast<std::size_t>(k)];
        sizes[un] += g.generators();
        moduli = concat(moduli, g.moduli());
      }
    canon.push_back(canonical_presentation(moduli));
  }

  // eta^* : level n -> level m on presentations.
  auto presented = [&](const MonotoneMap& eta) {
    const int m = eta.domain(), n = eta.codomain();
    const auto um = static_cast<std::size_t>(m), un = static_cast<std::size_t>(n);
    Matrix P(sizes[um], sizes[un]);
    for (const auto& s : summands[un]) {
      const auto [tau, delta] = epi_mono_factor(compose(s.epi, eta));
      const auto& g = C.groups[static_cast<std::size_t>(s.k)];
      if (delta.is_identity()) {
        const auto& t = summands[um][lookup[um].at(tau)];
        for (std::size_t j = 0; j < g.generators(); ++j) P(t.offset + j, s.offset + j) = 1;
      } else if (delta == MonotoneMap::coface(0, s.k)) {
        const auto& t = summands[um][lookup[um].at(tau)];
        const Matrix& d = C.differentials[static_cast<std::size_t>(s.k) - 1].matrix();
        for (std::size_t i = 0; i < d.rows(); ++i)
          for (std::size_t j = 0; j < d.cols(); ++j) P(t.offset + i, s.offset + j) = d(i, j);
      }
    }
    return transport(canon[un], canon[um], P);
  };

  std::vector<FGAbelianGroup> levels;
  for (const auto& c : canon) levels.push_back(c.group);
  std::vector<std::vector<AbHom>> faces(uN + 1), degens(uN + 1);
  for (int n = 0; n <= N; ++n) {
    const auto un = static_cast<std::size_t>(n);
    if (n > 0)
      for (int i = 0; i <= n; ++i) faces[un].push_back(presented(MonotoneMap::coface(i, n)));
    if (n < N)
      for (int i = 0; i <= n; ++i) degens[un].push_back(presented(MonotoneMap::codegeneracy(i, n)));
  }
  return {std::move(summands), std::move(lookup), std::move(sizes), std::move(canon),
          SimplicialAbelianGroup(levels, faces, degens)};
}

}  // namespace

SimplicialAbelianGroup denormalize(const ChainComplex& C, int N) { return denormalize_detail(C, N).result; }

std::vector<AbHom> dold_kan_unit(const ChainComplex& C, int N) {
  const auto G = denormalize_detail(C, N);
  const auto NG = normalize(G.result);
  std::vector<AbHom> out;
  for (int n = 0; n <= std::min(N, C.top_degree()); ++n) {
    const auto un = static_cast<std::size_t>(n);
    const auto& s = G.summands[un][G.lookup[un].at(MonotoneMap::identity(n))];
    const auto& g = C.groups[un];
    std::vector<Vector> cols;
    for (std::size_t j = 0; j < g.generators(); ++j) {
      Vector v(G.presented_size[un], 0);
      v[s.offset + j] = 1;
      const Vector level_coords = G.canon[un].coordinates(v);
      cols.push_back(NG.presentations[un].coordinates(G.result.level(n).reduce(level_coords)));
    }
    out.emplace_back(g, NG.complex.groups[un], Matrix::from_columns(NG.complex.groups[un].generators(), cols));
  }
  return out;
}

std::vector<AbHom> dold_kan_counit(const SimplicialAbelianGroup& A) {
  const auto NA = normalize(A);
  const int N = A.truncation();
  const auto G = denormalize_detail(NA.complex, N);
  std::vector<AbHom> out;
  for (int n = 0; n <= N; ++n) {
    const auto un = static_cast<std::size_t>(n);
    Matrix P(A.level(n).generators(), G.presented_size[un]);
    for (const auto& s : G.summands[un]) {
      const Matrix block = A.act(s.epi).matrix() * NA.inclusions[static_cast<std::size_t>(s.k)].matrix();
      for (std::size_t i = 0; i < block.rows(); ++i)
        for (std::size_t j = 0; j < block.cols(); ++j) P(i, s.offset + j) = block(i, j);
    }
    out.emplace_back(G.result.level(n), A.level(n), P * G.canon[un].representatives);
  }
  return out;
}

SimplicialAbelianGroup em_space(const FGAbelianGroup& A, int n, int N) { return denormalize(shifted(A, n), N); }

std::vector<FGAbelianGroup> homotopy_groups(const SimplicialAbelianGroup& A) {
  auto h = homology(normalized_complex(A));
  h.pop_back();
  return h;
}

CheckReport is_abelian_hypergroupoid(const SimplicialAbelianGroup& A, int n) {
  if (n < 0) throw InvalidArgument("n must be non-negative");
  if (A.truncation() < n + 2) throw TruncationTooSmall(A.truncation(), n + 2);
  CheckReport report;
  report.check = "abelian-hypergroupoid";
  const auto C = normalized_complex(A);
  for (int m = 0; m <= A.truncation(); ++m) {
    const auto& g = C.groups[static_cast<std::size_t>(m)];
    report.statistics.push_back({"normalized", m, -1, A.level(m).generators(), g.generators(), 0, 0});
    if (m > n && !g.is_zero())
      report.failures.push_back({m, -1, FailureKind::nonzero_normalized, {}, std::nullopt, {},
                                 "normalized complex is " + g.to_string() + " in degree " + std::to_string(m)});
  }
  return report;
}

// ---- underlying simplicial set ----

std::vector<Vector> elements(const FGAbelianGroup& g) {
  const auto card = g.cardinality();
  if (!card) throw InvalidArgument("group " + g.to_string() + " is infinite");
  check_enumeration(static_cast<double>(*card));
  std::vector<Vector> out;
  Vector x = g.zero();
  while (true) {
    out.push_back(x);
    std::size_t p = x.size();
    while (p > 0) {
      --p;
      if (++x[p] < g.modulus(p)) break;
      x[p] = 0;
      if (p == 0) return out;
    }
    if (x.empty()) return out;
  }
}

std::string element_name(const Vector& x) {
  if (x.empty()) return "0";
  if (x.size() == 1) return std::to_string(x[0]);
  std::string s = "(";
  for (std::size_t i = 0; i < x.size(); ++i) s += (i ? "," : "") + std::to_string(x[i]);
  return s + ")";
}

namespace {

Index element_index(const FGAbelianGroup& g, const Vector& x) {
  std::uint64_t idx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) idx = idx * static_cast<std::uint64_t>(g.modulus(i)) + static_cast<std::uint64_t>(x[i]);
  return static_cast<Index>(idx);
}

}  // namespace

SimplicialSet underlying_sset(const SimplicialAbelianGroup& A) {
  const int N = A.truncation();
  SimplicialSet::Data data;
  data.truncation = N;
  std::vector<std::vector<Vector>> elems;
  for (int l = 0; l <= N; ++l) {
    elems.push_back(elements(A.level(l)));
    data.names.emplace_back();
    for (const auto& x : elems.back()) data.names.back().push_back(element_name(x));
  }
  auto table = [&](const AbHom& f, int from, int to) {
    std::vector<Index> t;
    for (const auto& x : elems[static_cast<std::size_t>(from)]) t.push_back(element_index(A.level(to), f.apply(x)));
    return t;
  };
  data.faces.resize(static_cast<std::size_t>(N) + 1);
  data.degeneracies.resize(static_cast<std::size_t>(N) + 1);
  for (int l = 0; l <= N; ++l) {
    if (l > 0)
      for (int j = 0; j <= l; ++j) data.faces[static_cast<std::size_t>(l)].push_back(table(A.face(l, j), l, l - 1));
    if (l < N)
      for (int j = 0; j <= l; ++j)
        data.degeneracies[static_cast<std::size_t>(l)].push_back(table(A.degeneracy(l, j), l, l + 1));
  }
  return SimplicialSet(std::move(data));
}

}  // namespace hgk
