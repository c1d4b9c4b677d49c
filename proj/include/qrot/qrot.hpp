#pragma once

// Umbrella header for the q-deformed rotational spectrum library.

#include "qrot/algebra.hpp"
#include "qrot/fitting.hpp"
#include "qrot/io.hpp"
#include "qrot/ito.hpp"
#include "qrot/matrix.hpp"
#include "qrot/qnum.hpp"
#include "qrot/series.hpp"
#include "qrot/spectra.hpp"
