#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "dp3/asymptotics.hpp"
#include "dp3/backlund.hpp"
#include "dp3/monodromy.hpp"
#include "dp3/ode.hpp"
#include "dp3/params.hpp"

namespace dp3 {

using json = nlohmann::json;

json to_json(cplx z);  // [re, im]
cplx cplx_from_json(const json& j);

json to_json(const MonodromyPoint& pt);
MonodromyPoint point_from_json(const json& j);
json to_json(const EquationParams& p);

json to_json(const LargeTauChart& c);
json to_json(const SmallTauChart& c);
json to_json(const FitResult& f);
// {predicted, fitted, abs_errors, convergence_table: [{tau0, tau1, err_nu, err_z}]}
json to_json(const ConnectionReport& r);
// [{n, a_n, tau, u, du, v, g, f}]
json to_json(const std::vector<LadderEntry>& lad);

// Inline JSON when the text starts with '{' or '[', otherwise a file path.
json load_json_arg(const std::string& text_or_path);

// Header tau_re,tau_im,u_re,u_im,du_re,du_im,phi_re,phi_im,H_re,H_im; phi columns empty when absent.
void write_csv(std::ostream& os, const Trajectory& t);
// Reads the same format back; H is recomputed if the columns are empty.
Trajectory read_csv(std::istream& is, cplx a, const EquationParams& p);

}  // namespace dp3
