#pragma once

namespace semind {

// Base theory implicitly prepended to every parsed file unless disabled.
inline const char* prelude_text() {
  return R"(
datatype list a = Nil | Cons a (list a)
datatype nat = Zero | Suc nat
datatype tree a = Leaf | Node (tree a) a (tree a)

fun append : list a => list a => list a where
  append Nil ys = ys
| append (Cons x xs) ys = Cons x (append xs ys)

fun rev : list a => list a where
  rev Nil = Nil
| rev (Cons x xs) = append (rev xs) (Cons x Nil)

fun length : list a => nat where
  length Nil = Zero
| length (Cons x xs) = Suc (length xs)

fun add : nat => nat => nat where
  add Zero n = n
| add (Suc m) n = Suc (add m n)

fun replicate : nat => a => list a where
  replicate Zero y = Nil
| replicate (Suc n) y = Cons y (replicate n y)

fun size : tree a => nat where
  size Leaf = Zero
| size (Node l x r) = Suc (add (size l) (size r))

fun mirror : tree a => tree a where
  mirror Leaf = Leaf
| mirror (Node l x r) = Node (mirror r) x (mirror l)

rule rev_induct for list {
  case conclude (Nil);
  case x xs assume (xs) conclude (append xs (Cons x Nil));
}

rule twostep for nat {
  case conclude (Zero);
  case conclude (Suc Zero);
  case n assume (n) conclude (Suc (Suc n));
}
)";
}

}  // namespace semind
