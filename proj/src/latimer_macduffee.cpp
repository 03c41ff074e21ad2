#include "solgenus/latimer_macduffee.hpp"

#include "solgenus/errors.hpp"

namespace solgenus {

IdealRep form_to_ideal(const BQForm& q) {
  IdealRep ideal{abs(q.a()), q.b(), q.disc()};
  if (mod(ideal.b * ideal.b - ideal.D, 4 * ideal.norm) != 0) {
    throw InternalError("form does not define an ideal: " + q.to_string());
  }
  return ideal;
}

IntMat2 multiplication_matrix(const IdealRep& ideal, const CharPoly& p) {
  if (ideal.D != p.disc()) {
    throw DomainError("ideal discriminant " + to_string(ideal.D) +
                      " differs from t^2 - 4n = " + to_string(p.disc()));
  }
  Int num = ideal.b * ideal.b - ideal.D;
  if (ideal.norm <= 0 || mod(num, 4 * ideal.norm) != 0 || mod(p.t + ideal.b, 2) != 0) {
    throw InternalError("lattice is not closed under multiplication by the eigenvalue");
  }
  Int c = num / (4 * ideal.norm);
  Int k = (p.t + ideal.b) / 2;
  IntMat2 m{k, -c, ideal.norm, k - ideal.b};
  if (m.trace() != p.t || m.det() != p.n) {
    throw InternalError("multiplication matrix has the wrong characteristic polynomial");
  }
  return m;
}

LMSet lm_representatives(const CharPoly& p) {
  OrderDisc disc = order_disc(p);
  FormClassSet classes = class_set(disc, EquivMode::Improper);
  LMSet out{p, disc, {}};
  out.reps.reserve(classes.size());
  for (std::size_t i = 0; i < classes.size(); ++i) {
    // form_less puts a positive a = 1 form first; the twin (−1, b, −c) is in
    // the same class, so the leading representative is always principal.
    BQForm form = i == 0 ? BQForm(1, -p.t, p.n) : classes.reps[i];
    if (i == 0 && classes.reps[0].a() != 1) {
      throw InternalError("principal class is not listed first");
    }
    if (form.a() < 0) form = act(form, IntMat2{1, 0, 0, -1});
    IdealRep ideal = form_to_ideal(form);
    out.reps.push_back({multiplication_matrix(ideal, p), form, ideal});
  }
  if (!(out.reps.front().matrix == companion(p))) {
    throw InternalError("principal representative is not the companion matrix");
  }
  return out;
}

}  // namespace solgenus
