Inductive wrong : Prop := w : wrong.
