#pragma once

#include "mloop/group.hpp"
#include "mloop/holonomy.hpp"
#include "mloop/loop_word.hpp"

namespace mloop {

/// Complexified gradient of W_l with respect to the link of edge e, as the
/// pair (grad Re W, grad Im W) in T_{Q_e} G. Zero when e does not occur.
ComplexTangent grad_wilson(const LoopWord& loop, int edge, const Configuration& q);

/// Gradient of Re W_l alone.
Matrix grad_re_wilson(const LoopWord& loop, int edge, const Configuration& q);

/// <grad W_1, grad W_2> at edge e, assembled from merger words.
Complex grad_inner(const LoopWord& l1, const LoopWord& l2, int edge, const Configuration& q);

/// <grad W_1, grad Re W_2> at edge e, assembled from merger words.
Complex grad_inner_action(const LoopWord& l1, const LoopWord& l2, int edge,
                          const Configuration& q);

/// Trace of P_g L_X R_Y P_g over T_g G, where L_X R_Y : Z -> X Z Y.
double trace_LR(const Matrix& g, const Matrix& x, const Matrix& y, const GroupSpec& spec);

/// Laplace-Beltrami operator in the link of edge e applied to W_l,
/// assembled from split and twist words.
Complex laplacian_wilson(const LoopWord& loop, int edge, const Configuration& q);

}  // namespace mloop
