#pragma once

// Everything except family_lab, which also needs the vendored json header.
#include "famheight/errors.hpp"
#include "famheight/exactalg/bigrat.hpp"
#include "famheight/exactalg/linalg.hpp"
#include "famheight/exactalg/multipoly.hpp"
#include "famheight/exactalg/perfect_power.hpp"
#include "famheight/exactalg/polytext.hpp"
#include "famheight/exactalg/primitive.hpp"
#include "famheight/exactalg/qtpoly.hpp"
#include "famheight/elimination/certificate.hpp"
#include "famheight/elimination/morphism.hpp"
#include "famheight/elimination/pushforward.hpp"
#include "famheight/elimination/resultant.hpp"
#include "famheight/heights_ff/family.hpp"
#include "famheight/heights_ff/ff_heights.hpp"
#include "famheight/heights_nf/height_value.hpp"
#include "famheight/heights_nf/hypersurface.hpp"
#include "famheight/heights_nf/point.hpp"
