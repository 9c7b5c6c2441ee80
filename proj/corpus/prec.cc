(* Primitive recursion packaged as a single higher-order fixpoint. *)

Inductive nat : Type0 := O : nat | S : nat -> nat.

Fixpoint PRec / 4 :
  forall (A : Type0) (g : A) (h : forall (p : nat) (v : A), A) (n : nat), A :=
  fun (A : Type0) (g : A) (h : forall (p : nat) (v : A), A) (n : nat) =>
  match n as y in nat return A with
  | O => g
  | S p => h p (PRec A g h p)
  end.

Definition one := S O.
Definition two := S one.
Definition three := S two.
Definition five := S (S three).

Definition addh := fun (p : nat) (v : nat) => S v.
Definition padd := fun (m : nat) (n : nat) => PRec nat m addh n.

Check padd : forall (m : nat) (n : nat), nat.
Assert padd two three = five : nat.
Assert padd O two = two : nat.
Eval padd two three.

Model five : nat depth 8.
