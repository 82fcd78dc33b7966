#ifndef HEISTRI__HEISTRI_HPP_
#define HEISTRI__HEISTRI_HPP_

#include "heis_core.hpp"
#include "grid_regularity.hpp"
#include "simplex_chain.hpp"
#include "horizontal_builder.hpp"
#include "cube_triangulation.hpp"
#include "json_io.hpp"
#include "mesh_export.hpp"
#include "invariants.hpp"

#endif  // HEISTRI__HEISTRI_HPP_
