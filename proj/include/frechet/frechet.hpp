#pragma once

#include "frechet/autocert.hpp"
#include "frechet/boundary.hpp"
#include "frechet/curves.hpp"
#include "frechet/degree.hpp"
#include "frechet/driver.hpp"
#include "frechet/enclosure.hpp"
#include "frechet/geometry.hpp"
#include "frechet/grid.hpp"
#include "frechet/hausdorff.hpp"
#include "frechet/io.hpp"
#include "frechet/metric.hpp"
#include "frechet/objective.hpp"
#include "frechet/parallel.hpp"
#include "frechet/rational.hpp"
#include "frechet/report.hpp"
#include "frechet/search.hpp"
