(* Mutually inductive trees and forests with their sizes. *)

Inductive nat : Type0 := O : nat | S : nat -> nat.
Inductive bitt : Type0 := b0 : bitt | b1 : bitt.

Fixpoint plus / 2 : forall (m : nat) (n : nat), nat :=
  fun (m : nat) (n : nat) =>
  match n as y in nat return nat with
  | O => m
  | S p => S (plus m p)
  end.

Inductive tree (A : Type0) : Type0 :=
  node : A -> forest A -> tree A
with forest (A : Type0) : Type0 :=
  emptyf : forest A
| consf : tree A -> forest A -> forest A.

Fixpoint Tsize / 2 : forall (A : Type0) (t : tree A), nat :=
  fun (A : Type0) (t : tree A) =>
  match t as y in tree A return nat with
  | node a f => S (Fsize A f)
  end
with Fsize / 2 : forall (A : Type0) (f : forest A), nat :=
  fun (A : Type0) (f : forest A) =>
  match f as y in forest A return nat with
  | emptyf => O
  | consf t2 f2 => plus (Tsize A t2) (Fsize A f2)
  end.

Definition leaf := node bitt b0 (emptyf bitt).
Definition f1 := consf bitt leaf (emptyf bitt).
Definition t2 := node bitt b1 f1.
Definition f2 := consf bitt t2 f1.

Check t2 : tree bitt.
Check f2 : forest bitt.
Assert Tsize bitt leaf = S O : nat.
Assert Tsize bitt t2 = S (S O) : nat.
Assert Fsize bitt f2 = S (S (S O)) : nat.
Eval Fsize bitt f2.

Definition treebitt := tree bitt.
Definition forestbitt := forest bitt.
Model t2 : treebitt depth 8.
Model f2 : forestbitt depth 8.
