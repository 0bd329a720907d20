import { Component, OnInit } from '@angular/core';

@Component({ selector: 'app-splash', template: '' })
export class SplashComponent implements OnInit {
  private timeoutId?: ReturnType<typeof setTimeout>;
  visible = true;

  ngOnInit() {
    this.timeoutId = setTimeout(() => (this.visible = false), 2000);
  }

  ngOnDestroy() {
    clearTimeout(this.timeoutId);
  }
}
