#ifndef QHRES_QHRES_HPP
#define QHRES_QHRES_HPP

#include "qhres/analysis.hpp"
#include "qhres/json.hpp"
#include "qhres/numint.hpp"
#include "qhres/parser.hpp"
#include "qhres/witness.hpp"

#endif // QHRES_QHRES_HPP
