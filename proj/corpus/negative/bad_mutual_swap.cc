Inductive nat : Type0 := O : nat | S : nat -> nat.

Inductive tree (A : Type0) : Type0 :=
  node : A -> forest A -> tree A
with forest (A : Type0) : Type0 :=
  emptyf : forest A
| consf : tree A -> forest A -> forest A.

Fixpoint Tsize / 2 : forall (A : Type0) (t : tree A), nat :=
  fun (A : Type0) (t : tree A) =>
  match t as y in tree A return nat with
  | node a f => S (Tsize A t)
  end
with Fsize / 2 : forall (A : Type0) (f : forest A), nat :=
  fun (A : Type0) (f : forest A) =>
  match f as y in forest A return nat with
  | emptyf => O
  | consf t2 f2 => S (Fsize A f2)
  end.
