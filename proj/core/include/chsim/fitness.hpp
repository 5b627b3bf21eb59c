#pragma once

namespace chsim {

// How the five per-node objectives are combined into one score.
//  Residual: every term is min-max normalized over the candidate pool and
//            oriented larger-is-better; the energy term uses residual energy.
//  Literal:  w1*E_C + w2*(1/Com_c) + w3*(1/D_Que) + w4*LQ + w5*N_c on the raw
//            values, for fidelity experiments.
enum class FitnessMode { Residual, Literal };

struct FitnessWeights {
  double energy = 0.2;         // w1
  double comm_cost = 0.2;      // w2, applied to 1/Com_c
  double queuing_delay = 0.2;  // w3, applied to 1/D_Que
  double link_quality = 0.2;   // w4
  double centrality = 0.2;     // w5

  void validate() const;
};

}  // namespace chsim
