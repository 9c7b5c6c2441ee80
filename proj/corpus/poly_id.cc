(* Impredicative polymorphic identity and proof irrelevance checks. *)

Inductive nat : Type0 := O : nat | S : nat -> nat.

Definition I := fun (A : Type0) => A -> A.
Definition P := forall (a : Prop), a -> a.

Definition idp := fun (a : Prop) (p : a) => p.

Check P : Prop.
Check P : Type0.
Check idp : P.
Check I P : Type0.

Definition IP := I P.
Definition idP := idp P.
Check idP : IP.

Definition idq := fun (a : Prop) (p : a) => idp a p.
Check idq : P.
Assert idq = idp : P.

Definition falsum := forall (a : Prop), a.
Check falsum : Prop.

Model idp : P depth 4.
Model idP : IP depth 4.
Model idq : P depth 4.
