#include "supdiff/family.hpp"

#include <sstream>

namespace supdiff {

Rat poly_eval(const Poly& p, const Rat& t) {
  Rat v = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * t + *it;
  return v;
}

Eigen::Index family_dim(const IndexedFamily& fam) {
  return std::visit(
      [](const auto& f) -> Eigen::Index {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, FiniteFamily>) {
          if (f.members.empty()) throw std::invalid_argument("empty family");
          return f.members.front().dim;
        } else if constexpr (std::is_same_v<T, SequenceFamily>) {
          return f.limit.dim;
        } else {
          return f.dim;
        }
      },
      fam);
}

namespace {

std::string finite_label(const FiniteFamily& f, std::size_t i) {
  if (i < f.labels.size() && !f.labels[i].empty()) return f.labels[i];
  if (f.omega && *f.omega == i) return "omega";
  return "f" + std::to_string(i + 1);
}

}  // namespace

FiniteFamily discretize(const ParametricFamily& fam, int grid) {
  if (grid < 2) throw std::invalid_argument("discretize: grid must be at least 2");
  FiniteFamily out;
  const Rat step = (fam.hi - fam.lo) / (grid - 1);
  for (int k = 0; k < grid; ++k) {
    const Rat t = fam.lo + step * k;
    PolyFunc f;
    f.dim = fam.dim;
    f.domain = fam.domain;
    for (const ParamPiece& p : fam.pieces) {
      AffinePiece piece;
      piece.a = zero_vec(fam.dim);
      for (Eigen::Index j = 0; j < fam.dim; ++j)
        if (j < static_cast<Eigen::Index>(p.slope.size()))
          piece.a[j] = poly_eval(p.slope[j], t);
      piece.b = poly_eval(p.intercept, t);
      f.pieces.push_back(std::move(piece));
    }
    if (f.pieces.empty()) f.pieces.push_back(AffinePiece{zero_vec(fam.dim), 0});
    out.members.push_back(std::move(f));
    out.labels.push_back("t=" + format_rat(t));
  }
  return out;
}

std::vector<MemberView> member_views(const IndexedFamily& fam,
                                     std::optional<int> gridOverride) {
  std::vector<MemberView> views;
  if (const auto* fin = std::get_if<FiniteFamily>(&fam)) {
    for (std::size_t i = 0; i < fin->members.size(); ++i)
      views.push_back({finite_label(*fin, i), fin->members[i], false});
  } else if (const auto* seq = std::get_if<SequenceFamily>(&fam)) {
    for (std::size_t i = 0; i < seq->prefix.size(); ++i)
      views.push_back({"f" + std::to_string(i + 1), seq->prefix[i], false});
    views.push_back({"omega", seq->limit, true});
  } else {
    const auto& par = std::get<ParametricFamily>(fam);
    FiniteFamily fin = discretize(par, gridOverride.value_or(par.grid));
    for (std::size_t i = 0; i < fin.members.size(); ++i)
      views.push_back({fin.labels[i], std::move(fin.members[i]), false});
  }
  if (views.empty()) throw std::invalid_argument("empty family");
  const Eigen::Index n = views.front().fn.dim;
  for (const MemberView& v : views)
    if (v.fn.dim != n) throw std::invalid_argument("family members disagree on dimension");
  return views;
}

namespace {

std::vector<VecQ> tail_sample_points(Eigen::Index dim) {
  std::vector<VecQ> pts;
  pts.push_back(zero_vec(dim));
  for (Eigen::Index i = 0; i < dim; ++i) {
    pts.push_back(unit_vec(dim, i));
    pts.push_back(VecQ(-unit_vec(dim, i)));
  }
  VecQ ones = zero_vec(dim);
  for (Eigen::Index i = 0; i < dim; ++i) ones[i] = 1;
  pts.push_back(ones);
  pts.push_back(VecQ(-ones));
  return pts;
}

std::vector<std::string> tail_warnings(const SequenceFamily& seq) {
  std::vector<std::string> out;
  const std::size_t n = seq.prefix.size();
  if (n == 0) return out;
  const std::size_t tail = (n + 2) / 3;
  for (std::size_t i = n - tail; i < n; ++i) {
    for (const VecQ& x : tail_sample_points(seq.limit.dim)) {
      const FnValue fv = eval(seq.prefix[i], x);
      const FnValue lv = eval(seq.limit, x);
      bool exceeds = false;
      if (!lv.finite)
        exceeds = false;
      else if (!fv.finite)
        exceeds = true;
      else
        exceeds = fv.value > lv.value + seq.slack;
      if (exceeds) {
        std::ostringstream os;
        os << "tail-consistency: member f" << (i + 1) << " exceeds the declared limit at ("
           << format_vec(x) << ") beyond slack " << format_rat(seq.slack)
           << "; the declared limit may be wrong";
        out.push_back(os.str());
        break;
      }
    }
  }
  return out;
}

}  // namespace

SupResult sup_function(const IndexedFamily& fam, std::optional<int> gridOverride) {
  const std::vector<MemberView> views = member_views(fam, gridOverride);
  SupResult res;
  res.f.dim = views.front().fn.dim;
  res.f.domain.dim = res.f.dim;
  for (const MemberView& v : views) {
    const auto pieces = effective_pieces(v.fn);
    res.f.pieces.insert(res.f.pieces.end(), pieces.begin(), pieces.end());
    res.f.domain.rows.insert(res.f.domain.rows.end(), v.fn.domain.rows.begin(),
                             v.fn.domain.rows.end());
  }
  if (const auto* seq = std::get_if<SequenceFamily>(&fam)) {
    res.surrogate = true;
    res.warnings = tail_warnings(*seq);
  } else if (std::holds_alternative<ParametricFamily>(fam)) {
    res.surrogate = true;
  }
  return res;
}

ActiveSet active_set(const IndexedFamily& fam, const VecQ& x, const Rat& eps,
                     std::optional<int> gridOverride) {
  if (eps < 0) throw std::invalid_argument("active_set: negative epsilon");
  ActiveSet as;
  as.eps = eps;
  const std::vector<MemberView> views = member_views(fam, gridOverride);
  const FnValue fx = eval(sup_function(fam, gridOverride).f, x);
  if (!fx.finite) return as;
  const auto* fin = std::get_if<FiniteFamily>(&fam);
  for (std::size_t i = 0; i < views.size(); ++i) {
    const FnValue v = eval(views[i].fn, x);
    if (!v.finite) continue;  // cannot happen when f(x) is finite
    const Rat gap = fx.value - v.value;
    if (gap > eps) continue;
    if (views[i].is_limit) {
      as.includesLimit = true;
    } else {
      as.indices.emplace_back(i, gap);
      if (fin && fin->omega && *fin->omega == i) as.includesLimit = true;
    }
  }
  return as;
}

bool closure_condition_check(const IndexedFamily& fam,
                             std::optional<int> gridOverride) {
  const SupResult sup = sup_function(fam, gridOverride);
  const PolyFunc lhs = closure(sup.f);

  PolyFunc rhs;
  rhs.dim = sup.f.dim;
  rhs.domain.dim = sup.f.dim;
  bool rhs_proper = true;
  for (const MemberView& v : member_views(fam, gridOverride)) {
    const PolyFunc cl = closure(v.fn);
    if (!is_proper(cl)) {
      rhs_proper = false;
      break;
    }
    const auto pieces = effective_pieces(cl);
    rhs.pieces.insert(rhs.pieces.end(), pieces.begin(), pieces.end());
    rhs.domain.rows.insert(rhs.domain.rows.end(), cl.domain.rows.begin(),
                           cl.domain.rows.end());
  }
  if (!rhs_proper) rhs = make_infinite(sup.f.dim);
  return same_function_closed(lhs, rhs);
}

FiniteFamily augmented_family(const SequenceFamily& fam, bool tilde,
                              const VecQ* x) {
  FiniteFamily out;
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < fam.prefix.size(); ++i) keep.push_back(i);
  if (tilde) {
    if (x == nullptr)
      throw std::invalid_argument("augmented_family: tilde selection needs a reference point");
    IndexedFamily as_fam = fam;
    const FnValue fx = eval(sup_function(as_fam).f, *x);
    if (fx.finite) {
      keep.clear();
      for (std::size_t i = 0; i < fam.prefix.size(); ++i) {
        const FnValue v = eval(fam.prefix[i], *x);
        if (v.finite && v.value == fx.value) keep.push_back(i);
      }
    }
  }
  for (std::size_t i : keep) {
    out.members.push_back(fam.prefix[i]);
    out.labels.push_back("f" + std::to_string(i + 1));
  }
  out.members.push_back(fam.limit);
  out.labels.push_back("omega");
  out.omega = out.members.size() - 1;
  return out;
}

}  // namespace supdiff
