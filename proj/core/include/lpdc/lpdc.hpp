#pragma once

#include "lpdc/analysis.hpp"
#include "lpdc/biphoton.hpp"
#include "lpdc/config_io.hpp"
#include "lpdc/errors.hpp"
#include "lpdc/fourier.hpp"
#include "lpdc/hom.hpp"
#include "lpdc/model.hpp"
#include "lpdc/oracle.hpp"
#include "lpdc/transfer.hpp"
