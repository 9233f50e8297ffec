package p;

public class Last {
  char last(String s) {
    return s[s.length-1];
  }
}
