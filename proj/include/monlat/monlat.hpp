#ifndef MONLAT_MONLAT_HPP
#define MONLAT_MONLAT_HPP

#include "monlat/builders.hpp"
#include "monlat/congruence.hpp"
#include "monlat/core.hpp"
#include "monlat/json_io.hpp"
#include "monlat/lattice.hpp"
#include "monlat/monoid.hpp"
#include "monlat/normality.hpp"
#include "monlat/zgroups.hpp"

#endif  // MONLAT_MONLAT_HPP
