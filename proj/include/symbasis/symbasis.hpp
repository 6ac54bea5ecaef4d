#pragma once

#include <symbasis/bases.hpp>
#include <symbasis/bijections.hpp>
#include <symbasis/exact_matrix.hpp>
#include <symbasis/labels.hpp>
#include <symbasis/modular_data.hpp>
#include <symbasis/numeric.hpp>
#include <symbasis/partition.hpp>
#include <symbasis/polynomial.hpp>
#include <symbasis/serde.hpp>
#include <symbasis/transition.hpp>
