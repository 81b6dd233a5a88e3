#ifndef REALWORD_REALWORD_HPP_
#define REALWORD_REALWORD_HPP_

//! Everything at once.

#include "acceptance.hpp"
#include "britton.hpp"
#include "bss.hpp"
#include "constructions.hpp"
#include "corpus.hpp"
#include "enumerate.hpp"
#include "errors.hpp"
#include "groups.hpp"
#include "guard_transform.hpp"
#include "path.hpp"
#include "pattern.hpp"
#include "predicate.hpp"
#include "presentation.hpp"
#include "rat.hpp"
#include "reduction.hpp"
#include "word.hpp"
#include "wordproblem.hpp"

#endif  // REALWORD_REALWORD_HPP_
