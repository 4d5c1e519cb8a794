#pragma once

#include "pac/geometry.hpp"
#include "pac/union.hpp"
#include "pac/monte_carlo.hpp"
#include "pac/quadrature.hpp"
#include "pac/bounds.hpp"
#include "pac/certify.hpp"
#include "pac/explore.hpp"
#include "pac/search.hpp"
#include "pac/io.hpp"
#include "pac/report.hpp"
