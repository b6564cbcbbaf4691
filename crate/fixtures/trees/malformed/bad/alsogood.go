package bad

// Intact survives its sibling's syntax error.
func Intact() string { return "ok" }
