package ok

// Fine is well-formed.
func Fine() int { return 4 }
