package util

import "fmt"

// Label renders a short diagnostic tag.
func Label(name string, n int) string {
	return fmt.Sprintf("%s<%d>", name, n)
}
