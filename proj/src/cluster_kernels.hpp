#pragma once

#include "henderson/cluster.hpp"

namespace henderson::detail {

std::vector<double> trapezoid_weights(const GridSpec& g);

Kernel2D T_table_parallel(const BoltzmannLookup& B, const GridSpec& g, int n);
Kernel2D Q_table_parallel(const BoltzmannLookup& B, const GridSpec& g, int n);

Kernel2D T_table_serial(const BoltzmannLookup& B, const GridSpec& g, int n);
Kernel2D Q_table_serial(const BoltzmannLookup& B, const GridSpec& g, int n);
GridFunction I_line_serial(const BoltzmannLookup& B, const GridSpec& g, int n);
double J_scalar_serial(const BoltzmannLookup& B, const GridSpec& g, int n);

}  // namespace henderson::detail
