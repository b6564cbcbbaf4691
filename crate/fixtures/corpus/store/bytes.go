package store

import "unsafe"

// FastBytes reinterprets a string as a byte slice without copying. The
// aliasing trick saves an allocation per write on the hot path.
func FastBytes(s string) []byte {
	return *(*[]byte)(unsafe.Pointer(&s)) // want cosmos/unsafe-package
}
