(* A small inductive type parameterised over a large sort. *)

Inductive nat : Type0 := O : nat | S : nat -> nat.
Inductive bitt : Type0 := b0 : bitt | b1 : bitt.

Inductive titi (x : Type1) : Type0 :=
  Z1 : titi x
| Z2 : titi nat -> titi x -> titi x.

Definition zb := Z1 bitt.
Definition zn := Z1 nat.
Definition zz := Z2 bitt zn zb.

Check zb : titi bitt.
Check zz : titi bitt.
Eval zz.

Definition titibitt := titi bitt.
Model zb : titibitt depth 4.
Model zz : titibitt depth 6.
