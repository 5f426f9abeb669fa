#include "whh/tables.hpp"

#include <cmath>

#include "whh/means.hpp"

namespace whh {

double TableRow::abs_diff() const { return std::abs(computed - reference); }

bool TableSet::all_ok(double tol) const {
  for (const auto& row : values) {
    if (!(row.abs_diff() <= tol)) return false;
  }
  for (const auto& row : signs) {
    if (row.computed_sign != row.reference_sign) return false;
  }
  return true;
}

namespace {

struct Trivariate {
  double l1, l2;
  double a0, a1, a2;
  const char* label;
};

struct Bivariate {
  double row_lambda;  // weight of the second node
  double a, b;
  const char* label;
};

constexpr Trivariate kMultivariate[] = {
    {1.0 / 3.0, 1.0 / 6.0, 0.5, 1.0, 2.0, "l=(1/3,1/6) a=(0.5,1,2)"},
    {0.2, 0.25, 1.3, 1.5, 1.9, "l=(0.2,0.25) a=(1.3,1.5,1.9)"},
    {0.05, 0.2, 19.0, 1.0, 1.0, "l=(0.05,0.2) a=(19,1,1)"},
};

constexpr Bivariate kBivariateLog[] = {
    {1.0 / 3.0, 2.0, 1.0, "l=1/3 a=(2,1)"},
    {0.9, 4.0, 3.0, "l=0.9 a=(4,3)"},
};

constexpr Bivariate kBivariateIdentric[] = {
    {0.75, 3.0, 1.0, "l=3/4 a=(3,1)"},
    {0.2, 6.5, 6.0, "l=0.2 a=(6.5,6)"},
};

int sign_of(double lhs, double rhs, double bound) {
  if (lhs - rhs > bound) return 1;
  if (rhs - lhs > bound) return -1;
  return 0;
}

}  // namespace

TableSet compute_reference_tables(const QuadratureConfig& cfg) {
  TableSet set;

  // ---- three-node logarithmic / identric values -------------------------
  struct Computed {
    MeanResult logcal, logbb, identric;
  };
  Computed tri[3];
  for (int i = 0; i < 3; ++i) {
    const auto& row = kMultivariate[i];
    WeightVector w({row.l1, row.l2});
    NodeVector a({row.a0, row.a1, row.a2});
    tri[i].logcal = log_mean_cal(w, a, cfg);
    tri[i].logbb = log_mean_bb(w, a, cfg);
    tri[i].identric = identric_mean(w, a, cfg);
  }

  auto value_row = [&set](const char* table, const char* inputs,
                          const char* quantity, double reference,
                          const MeanResult& m) {
    set.values.push_back(
        {table, inputs, quantity, reference, m.value, m.error_bound});
  };

  value_row("example45_multivariate", kMultivariate[0].label, "logcal",
            1.19393, tri[0].logcal);
  value_row("example45_multivariate", kMultivariate[0].label, "logbb",
            1.19612, tri[0].logbb);
  value_row("example45_multivariate", kMultivariate[0].label, "identric",
            1.26771, tri[0].identric);
  value_row("example45_multivariate", kMultivariate[1].label, "logcal",
            1.66722, tri[1].logcal);
  value_row("example45_multivariate", kMultivariate[1].label, "logbb",
            1.66599, tri[1].logbb);
  value_row("example45_multivariate", kMultivariate[2].label, "logcal",
            1.36040, tri[2].logcal);
  value_row("example45_multivariate", kMultivariate[2].label, "identric",
            1.35253, tri[2].identric);

  // ---- two-node logarithmic rows -----------------------------------------
  const double biv_log_ref[2][3] = {
      {1.60804, 1.62944, 1.61423},
      {3.09329, 3.08815, 3.09162},
  };
  for (int i = 0; i < 2; ++i) {
    const auto& row = kBivariateLog[i];
    WeightVector w({1.0 - row.row_lambda});
    NodeVector a({row.a, row.b});
    value_row("example45_bivariate", row.label, "logcal", biv_log_ref[i][0],
              log_mean_cal(w, a, cfg));
    value_row("example45_bivariate", row.label, "logbb", biv_log_ref[i][1],
              log_mean_bb(w, a, cfg));
    MeanResult closed{bivariate_log_mean(row.row_lambda, row.a, row.b), 0.0,
                      std::nullopt};
    value_row("example45_bivariate", row.label, "bivl", biv_log_ref[i][2],
              closed);
  }

  // ---- two-node identric rows --------------------------------------------
  const double biv_iden_ref[2][2] = {
      {1.40952, 1.43367},
      {6.39950, 6.39893},
  };
  MeanResult biv_identric[2];
  MeanResult biv_identric_closed[2];
  for (int i = 0; i < 2; ++i) {
    const auto& row = kBivariateIdentric[i];
    WeightVector w({1.0 - row.row_lambda});
    NodeVector a({row.a, row.b});
    biv_identric[i] = identric_mean(w, a, cfg);
    biv_identric_closed[i] = {
        bivariate_identric_mean(row.row_lambda, row.a, row.b), 0.0,
        std::nullopt};
    value_row("identric_bivariate", row.label, "identric",
              biv_iden_ref[i][0], biv_identric[i]);
    value_row("identric_bivariate", row.label, "bivi", biv_iden_ref[i][1],
              biv_identric_closed[i]);
  }

  // ---- non-comparability witnesses ---------------------------------------
  auto sign_row = [&set](const char* pair, const char* inputs,
                         const MeanResult& lhs, const MeanResult& rhs,
                         int reference_sign) {
    const double bound = lhs.error_bound + rhs.error_bound;
    set.signs.push_back({pair, inputs, lhs.value, rhs.value, bound,
                         reference_sign,
                         sign_of(lhs.value, rhs.value, bound)});
  };

  sign_row("logcal-logbb", kMultivariate[0].label, tri[0].logcal,
           tri[0].logbb, -1);
  sign_row("logcal-logbb", kMultivariate[1].label, tri[1].logcal,
           tri[1].logbb, +1);
  sign_row("logcal-identric", kMultivariate[0].label, tri[0].logcal,
           tri[0].identric, -1);
  sign_row("logcal-identric", kMultivariate[2].label, tri[2].logcal,
           tri[2].identric, +1);
  sign_row("identric-bivi", kBivariateIdentric[0].label, biv_identric[0],
           biv_identric_closed[0], -1);
  sign_row("identric-bivi", kBivariateIdentric[1].label, biv_identric[1],
           biv_identric_closed[1], +1);

  return set;
}

}  // namespace whh
